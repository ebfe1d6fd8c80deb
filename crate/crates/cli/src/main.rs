//! Command-line front end: exact orbital diameters, bound evaluation,
//! family constructors, Zsigmondy searches and the verification sweep.
//!
//! Exit codes: 0 success, 1 assertion failure, 2 invalid input, 3 cap
//! exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use orbdiam::record::SweepConfig;
use orbdiam::specfile::GroupSpecFile;
use orbdiam::{emit, suite};
use orbdiam_core::bigreal::BigReal;
use orbdiam_core::bounds::{
    center_upper_bound, cochrane_cipra_bound, ratio_bounds, lower_bounds_orbit, composition_factor_bounds,
    summand_count_bounds, BoundReport, ExactDiameters, Side, Target,
};
use orbdiam_core::construct::{
    build_alt_module, build_field_module, build_wreath, build_zsigmondy_cyclic, cyclic_top,
    find_zsigmondy_p, find_zsigmondy_primes, symmetric_top, waring_number, AltModuleSpec,
    FieldModuleSpec, WreathSpec, ZsigmondyCyclicSpec,
};
use orbdiam_core::diameter::{group_diameters, naive_diameter_oracle};
use orbdiam_core::group::{
    compute_facts, is_normal_in, orbits_on_points, scalar_intersection, GroupSpec,
    DEFAULT_MAX_GROUP,
};
use orbdiam_core::space::DEFAULT_MAX_POINTS;
use orbdiam_core::summands::summand_count;
use orbdiam_core::sumset::ConnectionSet;
use orbdiam_core::Error as CoreError;

#[derive(Parser)]
#[command(name = "orbdiam", version, about = "Exact orbital diameters of affine groups over F_p^d, with bound verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact orbital diameters of a group given by a spec file.
    Diameter {
        #[arg(long)]
        group: PathBuf,
        /// report only the directed maximum
        #[arg(long, conflicts_with_all = ["undirected", "both"])]
        directed: bool,
        /// report only the undirected maximum
        #[arg(long, conflicts_with = "both")]
        undirected: bool,
        /// report both maxima (default)
        #[arg(long)]
        both: bool,
        /// list every nonzero orbit with its diameters and layer profile
        #[arg(long)]
        per_orbit: bool,
        /// cross-check against the naive breadth-first oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Orbit partition of the point space.
    Orbits {
        #[arg(long)]
        group: PathBuf,
    },
    /// Evaluate every applicable bound and compare with exact diameters.
    Bounds {
        #[arg(long)]
        group: PathBuf,
        /// abelian p'-subgroup for the explicit summand bound, as a spec file
        #[arg(long = "A", conflicts_with = "a_scalar")]
        a_file: Option<PathBuf>,
        /// use the scalar subgroup F_p^x of H as the abelian subgroup
        #[arg(long = "A-scalar")]
        a_scalar: bool,
        /// value of the Larsen-Pink function J(d); enables the conditional branches
        #[arg(long = "J")]
        j: Option<u64>,
        /// declare a Lie-type composition factor in characteristic p
        #[arg(long)]
        lie_type: bool,
    },
    /// Build one of the named group families as a spec file.
    Construct {
        #[command(subcommand)]
        family: ConstructCmd,
    },
    /// Waring number of the order-m subgroup of F_{p^f}^x.
    Waring {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: usize,
        #[arg(long = "m-order")]
        m_order: u64,
    },
    /// Zsigmondy primes for (q, d).
    Zsigmondy {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
    },
    /// Odd primes p <= limit with ord(p mod d+1) = d.
    ZsigmondyP {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        limit: u64,
    },
    /// Run a verification sweep and emit result files.
    Verify {
        /// "default", "quick", or a path to a JSON sweep configuration
        #[arg(long)]
        suite: String,
        #[arg(long)]
        out: PathBuf,
        /// cache directory for instance records
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    Wreath {
        #[arg(long)]
        p: u64,
        #[arg(long = "k-order")]
        k_order: u64,
        /// "cyclic", "sym", or a path to a JSON list of permutation images
        #[arg(long)]
        top: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Alt {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    ZsigmondyCyclic {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    FieldModule {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: usize,
        #[arg(long = "m-order")]
        m_order: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn max_v_from_env() -> u64 {
    std::env::var("ORBDIAM_MAX_V")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_POINTS)
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::CapExceeded { .. }) => 3,
        Some(_) => 2,
        None => 2,
    }
}

fn emit_spec(file: &GroupSpecFile, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            file.write(path)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", file.to_json()),
    }
    Ok(())
}

fn load_group(path: &Path) -> anyhow::Result<GroupSpec> {
    Ok(GroupSpecFile::read(path)?.to_group()?)
}

fn cmd_diameter(
    group: &Path,
    directed: bool,
    undirected: bool,
    per_orbit: bool,
    oracle: bool,
) -> anyhow::Result<u8> {
    let group = load_group(group)?;
    let space = group.space_with_cap(max_v_from_env())?;
    let orbits = orbits_on_points(&group, &space);
    let report = group_diameters(&space, &orbits)?;
    if per_orbit {
        println!("orbit rep  size  diamd  diam  layers(directed)");
        for o in &report.per_orbit {
            println!(
                "{:>9}  {:>4}  {:>5}  {:>4}  {:?}",
                o.rep, o.orbit_size, o.directed, o.undirected, o.directed_layers
            );
        }
    }
    if directed || !undirected {
        println!("diamd = {}", report.diamd);
    }
    if undirected || !directed {
        println!("diam  = {}", report.diam);
    }
    if oracle {
        let elements = orbits.elements_by_orbit();
        for o in &report.per_orbit {
            let id = orbits.orbit_of(o.rep) as usize;
            let delta = ConnectionSet::new(&space, &elements[id])?;
            let reference = naive_diameter_oracle(&space, &delta)?;
            if reference != o.directed {
                println!(
                    "ORACLE MISMATCH on orbit of {}: engine {} oracle {}",
                    o.rep, o.directed, reference
                );
                return Ok(1);
            }
        }
        println!("oracle agreement on {} orbits", report.per_orbit.len());
    }
    Ok(0)
}

fn cmd_orbits(group: &Path) -> anyhow::Result<u8> {
    let group = load_group(group)?;
    let space = group.space_with_cap(max_v_from_env())?;
    let orbits = orbits_on_points(&group, &space);
    println!(
        "|V| = {}, orbits = {} ({} nonzero)",
        space.size(),
        orbits.orbit_count(),
        orbits.orbit_count() - 1
    );
    println!("orbit  rep  size");
    for id in 0..orbits.orbit_count() {
        println!("{:>5}  {:>4}  {}", id, orbits.reps()[id], orbits.sizes()[id]);
    }
    Ok(0)
}

fn print_bound(name: &str, value: &BigReal, relation: &str, assertable: bool) {
    let tag = if assertable { "" } else { "  [not asserted]" };
    println!("  {name:<28} {relation} {value}{tag}");
}

fn cmd_bounds(
    group_path: &Path,
    a_file: Option<&Path>,
    a_scalar: bool,
    j: Option<u64>,
    lie_type: bool,
) -> anyhow::Result<u8> {
    let group = load_group(group_path)?;
    let space = group.space_with_cap(max_v_from_env())?;
    let orbits = orbits_on_points(&group, &space);
    let facts = compute_facts(&group, &space, &orbits, DEFAULT_MAX_GROUP);
    let diameters = group_diameters(&space, &orbits)?;
    println!(
        "{}: |V| = {}, |H| = {}, diamd = {}, diam = {}",
        group.name(),
        space.size(),
        facts
            .order
            .exact()
            .map_or("exceeds cap".into(), |o| o.to_string()),
        diameters.diamd,
        diameters.diam
    );

    let mut report = BoundReport {
        entries: vec![],
        exact: Some(ExactDiameters {
            diamd: diameters.diamd,
            diam: diameters.diam,
        }),
    };

    let order = facts.order.exact();
    let s = orbits.smallest_nonzero_orbit().unwrap();
    if let Some(h) = order.filter(|&h| h >= 2) {
        let lows = lower_bounds_orbit(s, space.size(), h)?;
        report.push("lower log|V|/(3log|H|)", lows.log_form_group, Side::Lower, Target::Undirected, false, true, "");
        report.push("lower log|V|/log(2s+1)", lows.log_form_orbit, Side::Lower, Target::Undirected, false, true, "");
        report.push("lower (|V|^(1/s)-1)/2", lows.power_form, Side::Lower, Target::Undirected, false, true, "");
        let cor = ratio_bounds(group.dim(), space.size(), h, j)?;
        report.push("ratio lower", cor.lower, Side::Lower, Target::Undirected, false, true, "");
        report.push("ratio upper f(d)^(log|V|/log|H|)", cor.upper, Side::Upper, Target::Undirected, false, cor.upper_assertable, "needs J");
        let t12 = composition_factor_bounds(group.dim(), space.size(), h, lie_type, j);
        if let Some(b) = t12.lie_diam_bound {
            report.push("lie-type 2^(22d^3)", b, Side::Upper, Target::Undirected, true, true, "lie-type flag");
        }
        if let Some(b) = t12.diamd_bound {
            report.push("large-group diamd", b, Side::Upper, Target::Directed, true, t12.diamd_assertable, "needs J and |H| >= J^2");
        }
    }

    let center = center_upper_bound(group.field(), group.dim(), facts.scalar_subgroup.as_ref())?;
    report.push("center (p-1)d", BigReal::from_u64(center.directed_coarse), Side::Upper, Target::Directed, false, true, "");
    if let Some(r) = center.directed_refined {
        report.push("center diamd(F_p,scal)*d", BigReal::from_u64(r), Side::Upper, Target::Directed, false, true, "");
    }
    if let Some(u) = center.undirected_coarse {
        report.push("center (p-1)d/2", BigReal::from_u64(u), Side::Upper, Target::Undirected, false, true, "");
    }
    if let Some(u) = center.undirected_refined {
        report.push("center diam(F_p,scal<-1>)*d", BigReal::from_u64(u), Side::Upper, Target::Undirected, false, true, "");
    }

    let a_group = if a_scalar {
        let scalars = scalar_intersection(&group, DEFAULT_MAX_GROUP)?;
        if scalars.is_trivial() {
            println!("  scalar subgroup is trivial; no abelian-subgroup bound");
            None
        } else {
            Some(GroupSpec::new(
                group.field(),
                group.dim(),
                vec![orbdiam_core::FpMatrix::scalar(
                    group.field(),
                    group.dim(),
                    scalars.generator(),
                )],
                "scalar subgroup",
            )?)
        }
    } else if let Some(path) = a_file {
        Some(load_group(path)?)
    } else {
        None
    };
    if let Some(a) = a_group {
        let dec = summand_count(&a, DEFAULT_MAX_GROUP)?;
        let normal = is_normal_in(&a, &group, DEFAULT_MAX_GROUP)?;
        println!(
            "  A: |A| = {}, k = {} summands, normal in H: {normal}",
            dec.a_order, dec.k
        );
        let t13 = summand_count_bounds(group.dim(), space.size(), dec.a_order, dec.k, normal)?;
        report.push("summand diam bound", t13.diam_bound, Side::Upper, Target::Undirected, true, true, "");
        if let Some(b) = t13.diamd_bound {
            report.push("summand diamd bound (normal)", b, Side::Upper, Target::Directed, true, true, "");
        }
    }

    for e in &report.entries {
        let relation = match (e.side, e.target, e.strict) {
            (Side::Lower, Target::Undirected, false) => "<= diam: ",
            (Side::Lower, Target::Undirected, true) => "<  diam: ",
            (Side::Lower, Target::Directed, false) => "<= diamd:",
            (Side::Lower, Target::Directed, true) => "<  diamd:",
            (Side::Upper, Target::Undirected, false) => ">= diam: ",
            (Side::Upper, Target::Undirected, true) => ">  diam: ",
            (Side::Upper, Target::Directed, false) => ">= diamd:",
            (Side::Upper, Target::Directed, true) => ">  diamd:",
        };
        print_bound(&e.name, &e.value, relation, e.assertable);
    }
    let violations = report.violations();
    for v in &violations {
        println!("  VIOLATION: {v}");
    }
    if !violations.is_empty() {
        println!("{} bound violation(s)", violations.len());
        return Ok(1);
    }
    Ok(0)
}

fn cmd_verify(suite_name: &str, out: &Path, cache: Option<&Path>) -> anyhow::Result<u8> {
    let mut config = match suite_name {
        "default" => SweepConfig::default_suite(),
        "quick" => SweepConfig::quick_suite(),
        path => serde_json::from_str(&std::fs::read_to_string(path)?)?,
    };
    if let Ok(v) = std::env::var("ORBDIAM_MAX_V") {
        if let Ok(v) = v.parse() {
            config.max_v = v;
        }
    }
    let records = suite::run_verification_suite(&config, cache)?;
    let files = emit::emit_results(&records, out)?;
    let mut total = 0usize;
    let mut failed = 0usize;
    for rec in &records {
        total += rec.assertions.len();
        for a in rec.failed_assertions() {
            failed += 1;
            println!("FAIL {} :: {} :: {}", rec.key, a.name, a.detail);
        }
    }
    println!(
        "{} instances, {} assertions, {} failed",
        records.len(),
        total,
        failed
    );
    println!("results: {}", files.jsonl.display());
    println!("summary: {}", files.csv.display());
    Ok(if failed > 0 { 1 } else { 0 })
}

fn parse_top(top: &str, d: usize) -> anyhow::Result<Vec<Vec<usize>>> {
    match top {
        "cyclic" => Ok(cyclic_top(d)),
        "sym" | "symmetric" => Ok(symmetric_top(d)),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow::anyhow!("cannot read top-group file {path}: {e}"))?;
            Ok(serde_json::from_str(&text)?)
        }
    }
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Diameter {
            group,
            directed,
            undirected,
            both: _,
            per_orbit,
            oracle,
        } => cmd_diameter(&group, directed, undirected, per_orbit, oracle),
        Command::Orbits { group } => cmd_orbits(&group),
        Command::Bounds {
            group,
            a_file,
            a_scalar,
            j,
            lie_type,
        } => cmd_bounds(&group, a_file.as_deref(), a_scalar, j, lie_type),
        Command::Construct { family } => {
            match family {
                ConstructCmd::Wreath {
                    p,
                    k_order,
                    top,
                    d,
                    out,
                } => {
                    let spec = WreathSpec {
                        p,
                        k_order,
                        top_generators: parse_top(&top, d)?,
                        d,
                    };
                    let group = build_wreath(&spec)?;
                    emit_spec(&GroupSpecFile::from_group(&group), out.as_deref())?;
                }
                ConstructCmd::Alt { r, p, out } => {
                    let group = build_alt_module(&AltModuleSpec { r, p })?;
                    emit_spec(&GroupSpecFile::from_group(&group), out.as_deref())?;
                }
                ConstructCmd::ZsigmondyCyclic { d, p, out } => {
                    let group = build_zsigmondy_cyclic(&ZsigmondyCyclicSpec { d, p })?;
                    emit_spec(&GroupSpecFile::from_group(&group), out.as_deref())?;
                }
                ConstructCmd::FieldModule { p, f, m_order, out } => {
                    let module = build_field_module(&FieldModuleSpec { p, f, m_order })?;
                    emit_spec(&GroupSpecFile::from_group(&module.group), out.as_deref())?;
                }
            }
            Ok(0)
        }
        Command::Waring { p, f, m_order } => {
            let module = build_field_module(&FieldModuleSpec { p, f, m_order })?;
            let q = module.ext.q();
            let n = waring_number(&module)?;
            let cc = cochrane_cipra_bound(q, m_order)?;
            println!("waring number of M({m_order}) in F_{q}: {n}");
            println!(
                "cochrane-cipra bound: {} (ceiling {})",
                cc.raw,
                cc.ceiling.map_or("n/a".into(), |c| c.to_string())
            );
            Ok(0)
        }
        Command::Zsigmondy { q, d } => {
            let primes = find_zsigmondy_primes(q, d)?;
            if primes.is_empty() {
                println!("no zsigmondy primes for ({q}, {d})");
            } else {
                for r in primes {
                    println!("{r}");
                }
            }
            Ok(0)
        }
        Command::ZsigmondyP { d, limit } => {
            for p in find_zsigmondy_p(d, limit)? {
                println!("{p}");
            }
            Ok(0)
        }
        Command::Verify { suite, out, cache } => cmd_verify(&suite, &out, cache.as_deref()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
