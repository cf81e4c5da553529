//! Coarse error classification shared by the CLI exit-code contract.

/// Whether an error is the caller's fault or a size-cap refusal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input or violated precondition.
    Input,
    /// A configured resource/size cap was exceeded.
    Resource,
}
