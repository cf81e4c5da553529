//! The cross-module invariant suite run by `kwc verify-suite`.

use crate::CliError;
use clap::Args;
use kw_core::bounds;
use kw_core::{c4, catalog, kw, oracle, spectral};
use kw_core::{Graph, VertexSet};
use num_bigint::BigUint;
use std::path::PathBuf;

#[derive(Args)]
pub struct VerifySuiteArgs {
    /// Extra edge-list files appended to the catalog
    #[arg(long = "graph")]
    pub graphs: Vec<PathBuf>,
    /// Leave out the built-in families
    #[arg(long)]
    pub no_builtin: bool,
    /// Corrupt a bound constant to exercise the failure path
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

struct Check {
    name: &'static str,
    instances: usize,
    failures: usize,
    witnesses: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            instances: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            self.witnesses.push(format!("{}: {}", self.name, witness()));
        }
    }
}

pub fn run_suite(args: &VerifySuiteArgs) -> Result<String, CliError> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    if !args.no_builtin {
        for entry in catalog::builtin_catalog() {
            graphs.push((entry.name, entry.graph));
        }
    }
    for path in &args.graphs {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        graphs.push((path.display().to_string(), Graph::parse_edge_list(&text)?));
    }

    let mut checks = vec![
        Check::new("eq1-sandwich"),
        Check::new("kahn-zhao-domination"),
        Check::new("kw-invertibility"),
        Check::new("spectral"),
        Check::new("c4-extensions"),
        Check::new("square-identity"),
        Check::new("container-sandwich"),
    ];
    let [sandwich, kahn_zhao, invert, spectral_check, extensions, identity, containers] =
        &mut checks[..]
    else {
        unreachable!()
    };

    for (name, g) in &graphs {
        let n = g.n();

        if n <= 16 && n >= 1 {
            let table = oracle::count_independent_sets(g).map_err(CliError::from)?;
            let alpha = table.max_size();
            let lower = BigUint::from(1u32) << alpha;
            let upper: BigUint = (0..=alpha)
                .map(|m| bounds::big_binomial(n as u64, m as u64))
                .sum();
            sandwich.record(&lower <= table.total() && table.total() <= &upper, || {
                format!("{name}: 2^{alpha} <= {} <= {upper} fails", table.total())
            });
        }

        if n <= 12 && n >= 2 {
            if let Some(d) = g.regular_degree() {
                if d >= 1 {
                    let total = oracle::count_independent_sets(g)
                        .map_err(CliError::from)?
                        .total()
                        .clone();
                    let offset = if args.inject_fault { 2u32 } else { 1u32 };
                    let base = (BigUint::from(1u32) << (d + 1)) - BigUint::from(offset);
                    let ok = total.pow(2 * d as u32) <= base.pow(n as u32);
                    kahn_zhao.record(ok, || {
                        format!("{name}: i(G)^(2d) > (2^(d+1)-{offset})^n with i(G) = {total}")
                    });
                }

                run_spectral(name, g, spectral_check)?;
            }
        }

        if n <= 12 && n >= 1 {
            run_invertibility(name, g, invert)?;
            run_containers(name, g, containers)?;
        }

        if !oracle::has_c4(g) {
            if n <= 8 {
                for d in 0..=n {
                    let via_square = c4::count_c4_extensions(g, d).map_err(CliError::from)?;
                    let direct = c4::count_c4_extensions_direct(g, d).map_err(CliError::from)?;
                    extensions.record(via_square == direct, || {
                        format!("{name}: d={d}: {via_square} != {direct}")
                    });
                }
            }
            if n <= 10 {
                run_square_identity(name, g, identity)?;
            }
        }
    }

    let mut out = String::from("check,instances,failures\n");
    let mut witnesses = Vec::new();
    let mut failed = false;
    for check in &checks {
        out.push_str(&format!(
            "{},{},{}\n",
            check.name, check.instances, check.failures
        ));
        failed |= check.failures > 0;
        witnesses.extend(check.witnesses.iter().cloned());
    }
    if failed {
        print!("{out}");
        for w in &witnesses {
            eprintln!("violation: {w}");
        }
        return Err(CliError::Violation(format!(
            "{} invariant violations",
            witnesses.len()
        )));
    }
    Ok(out)
}

fn run_spectral(name: &str, g: &Graph, check: &mut Check) -> Result<(), CliError> {
    let profile = spectral::SpectralProfile::of(g).map_err(CliError::from)?;
    let spectrum = spectral::adjacency_spectrum(g).map_err(CliError::from)?;
    let trace: f64 = spectrum.iter().sum();
    let trace_sq: f64 = spectrum.iter().map(|x| x * x).sum();
    check.record(
        trace.abs() <= 1e-6 && (trace_sq - 2.0 * g.edge_count() as f64).abs() <= 1e-6,
        || format!("{name}: eigenvalue trace sanity fails"),
    );
    let worst = spectral::alon_chung_worst_slack(g).map_err(CliError::from)?;
    check.record(worst >= -1e-6, || {
        format!("{name}: subset density slack {worst}")
    });
    if profile.degree as f64 > profile.lambda_min {
        let hoffman = spectral::hoffman_bound(profile.n, profile.degree, profile.lambda_min)
            .map_err(CliError::from)?;
        let alpha = oracle::independence_number(g).map_err(CliError::from)? as f64;
        check.record(alpha <= hoffman + 1e-6, || {
            format!("{name}: alpha {alpha} exceeds Hoffman bound {hoffman}")
        });
    }
    Ok(())
}

fn run_invertibility(name: &str, g: &Graph, check: &mut Check) -> Result<(), CliError> {
    let n = g.n();
    for mask in oracle::independent_set_masks(g).map_err(CliError::from)? {
        let members = VertexSet::from_members(n, (0..n).filter(|v| mask & (1 << v) != 0));
        let size = members.len();
        if size == 0 {
            continue;
        }
        let mut qs = vec![1, size.div_ceil(2), size];
        qs.dedup();
        for q in qs {
            let trace = kw::kw_run(g, &members, q).map_err(CliError::from)?;
            let rebuilt = kw::kw_reconstruct(g, q, &trace.positions, &trace.leftover)
                .map_err(CliError::from)?;
            let fp = kw::fingerprint(g, &trace.selected, q).map_err(CliError::from)?;
            let sum: usize = trace.positions.iter().sum();
            let ok = rebuilt == members
                && fp == trace.selected
                && sum <= n - trace.survivors.len();
            check.record(ok, || format!("{name}: I = {members}, q = {q}"));
        }
    }
    Ok(())
}

fn run_containers(name: &str, g: &Graph, check: &mut Check) -> Result<(), CliError> {
    let n = g.n();
    let masks = oracle::independent_set_masks(g).map_err(CliError::from)?;
    for q in [1usize, 2] {
        if q > n {
            continue;
        }
        let family = kw::enumerate_containers(g, q, 10_000_000).map_err(CliError::from)?;
        for &mask in &masks {
            let members = VertexSet::from_members(n, (0..n).filter(|v| mask & (1 << v) != 0));
            if members.len() < q {
                continue;
            }
            let fp = kw::fingerprint(g, &members, q).map_err(CliError::from)?;
            let ok = match family.container_for(&fp) {
                Some(container) => {
                    fp.is_subset_of(&members) && members.is_subset_of(&container.union(&fp))
                }
                None => false,
            };
            check.record(ok, || format!("{name}: q = {q}, I = {members}"));
        }
    }
    Ok(())
}

fn run_square_identity(name: &str, g: &Graph, check: &mut Check) -> Result<(), CliError> {
    let n = g.n();
    let sq = c4::square_graph(g);
    for (x, y) in sq.square.edges() {
        check.record(sq.witnesses(x, y).len() == 1, || {
            format!("{name}: square edge ({x},{y}) lacks a unique witness")
        });
    }
    for mask in 0u64..(1 << n) {
        let b = VertexSet::from_members(n, (0..n).filter(|v| mask & (1 << v) != 0));
        let ok = c4::square_edge_identity_check(g, &b).map_err(CliError::from)?;
        check.record(ok, || format!("{name}: identity fails for B = {b}"));
    }
    Ok(())
}
