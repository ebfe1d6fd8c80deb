//! The verification sweep: construct each configured instance, measure it
//! exactly, evaluate every applicable bound, and record pass/fail for each
//! asserted inequality. Records are deterministic given the configuration
//! and engine version; wall-clock timings are the only nondeterministic
//! fields, and the cache preserves them for byte-stable re-emission.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use orbdiam_core::bigreal::BigReal;
use orbdiam_core::bounds::{
    center_upper_bound, cochrane_cipra_bound, ratio_bounds, lower_bounds_orbit, composition_factor_bounds,
    summand_count_bounds,
};
use orbdiam_core::construct::{
    build_alt_module, build_field_module, build_wreath, build_zsigmondy_cyclic, cyclic_top,
    find_zsigmondy_p, symmetric_top, waring_number, AltModuleSpec, FieldModuleSpec, WreathSpec,
    ZsigmondyCyclicSpec,
};
use orbdiam_core::diameter::{
    group_diameters, naive_diameter_oracle, naive_eccentricity, orbit_diameter_directed,
    orbit_diameter_undirected, DiameterReport,
};
use orbdiam_core::group::{
    compute_facts, is_normal_in, orbits_on_points, GroupOrder, GroupSpec, OrbitPartition,
};
use orbdiam_core::matrix::FpMatrix;
use orbdiam_core::space::VectorSpace;
use orbdiam_core::summands::summand_count;
use orbdiam_core::sumset::{sumset_step, ConnectionSet, VectorSet};
use orbdiam_core::{Error, PrimeField};

use crate::record::{
    AssertionRecord, BoundValueRecord, CapsRecord, InstanceRecord, SweepConfig, TimingsRecord,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Deterministic 64-bit generator (splitmix64); keeps the randomized sweeps
/// reproducible without an RNG dependency.
struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

#[derive(Debug, Clone)]
enum Instance {
    IdentityTrivial { p: u64 },
    IdentityNegation { p: u64 },
    Wreath { p: u64, k_order: u64, top: String, d: usize },
    Alt { r: usize, p: u64 },
    Zsigmondy { d: usize, p: u64, original_p: u64 },
    FieldModule { p: u64, f: usize, m_order: u64 },
    ReducibleCounterexample,
    WreathRejectP2,
    OracleRandom { p: u64, d: usize, cases: usize, seed: u64 },
    SumsetLaws { cases: usize, seed: u64 },
}

impl Instance {
    fn key(&self) -> String {
        match self {
            Instance::IdentityTrivial { p } => format!("identity-trivial-p{p:03}"),
            Instance::IdentityNegation { p } => format!("identity-negation-p{p:03}"),
            Instance::Wreath { p, k_order, top, d } => {
                format!("wreath-p{p:03}-k{k_order:03}-{top}-d{d}")
            }
            Instance::Alt { r, p } => format!("alt-r{r}-p{p:03}"),
            Instance::Zsigmondy { d, p, .. } => format!("zsig-d{d}-p{p:03}"),
            Instance::FieldModule { p, f, m_order } => {
                format!("waring-p{p:04}-f{f}-m{m_order:04}")
            }
            Instance::ReducibleCounterexample => "reject-reducible-diag21".into(),
            Instance::WreathRejectP2 => "reject-wreath-p2".into(),
            Instance::OracleRandom { p, d, .. } => format!("oracle-random-p{p}-d{d}"),
            Instance::SumsetLaws { .. } => "sumset-laws".into(),
        }
    }

    fn family(&self) -> &'static str {
        match self {
            Instance::IdentityTrivial { .. } | Instance::IdentityNegation { .. } => "identity",
            Instance::Wreath { .. } => "wreath",
            Instance::Alt { .. } => "alt",
            Instance::Zsigmondy { .. } => "zsigmondy",
            Instance::FieldModule { .. } => "field-module",
            Instance::ReducibleCounterexample | Instance::WreathRejectP2 => "rejection",
            Instance::OracleRandom { .. } => "oracle-random",
            Instance::SumsetLaws { .. } => "sumset-laws",
        }
    }
}

fn build_instances(config: &SweepConfig) -> anyhow::Result<Vec<Instance>> {
    let mut out = Vec::new();
    for &p in &config.identity_primes {
        out.push(Instance::IdentityTrivial { p });
        if p != 2 {
            out.push(Instance::IdentityNegation { p });
        }
    }
    for &p in &config.wreath_primes {
        for k_order in orbdiam_core::field::divisors(p - 1) {
            if k_order <= 1 {
                continue;
            }
            for top in &config.wreath_tops {
                for &d in &config.wreath_degrees {
                    out.push(Instance::Wreath {
                        p,
                        k_order,
                        top: top.clone(),
                        d,
                    });
                }
            }
        }
    }
    for &p in &config.alt_primes {
        out.push(Instance::Alt { r: config.alt_r, p });
    }
    for &(d, p) in &config.zsigmondy_candidates {
        // screen the order condition; substitute the next admissible prime
        let spec = ZsigmondyCyclicSpec { d, p };
        let chosen = if spec.order_condition_holds()? {
            p
        } else {
            *find_zsigmondy_p(d, 10_000)?
                .iter()
                .find(|&&q| q > p)
                .ok_or_else(|| anyhow::anyhow!("no admissible prime above {p} for d = {d}"))?
        };
        out.push(Instance::Zsigmondy {
            d,
            p: chosen,
            original_p: p,
        });
    }
    if config.field_module_max_q >= 3 {
        for p in 2..=config.field_module_max_q {
            if !orbdiam_core::field::is_prime(p) {
                continue;
            }
            let mut f = 1usize;
            let mut q = p;
            while q <= config.field_module_max_q {
                for m_order in orbdiam_core::field::divisors(q - 1) {
                    if m_order > 1 {
                        out.push(Instance::FieldModule { p, f, m_order });
                    }
                }
                f += 1;
                q = match q.checked_mul(p) {
                    Some(next) => next,
                    None => break,
                };
            }
        }
    }
    if config.include_rejections {
        out.push(Instance::ReducibleCounterexample);
        out.push(Instance::WreathRejectP2);
    }
    for &(p, d) in &config.oracle_random_spaces {
        out.push(Instance::OracleRandom {
            p,
            d,
            cases: config.oracle_random_cases,
            seed: config.oracle_random_seed,
        });
    }
    if config.sumset_property_cases() > 0 {
        out.push(Instance::SumsetLaws {
            cases: config.sumset_property_cases(),
            seed: config.oracle_random_seed ^ 0x5eed,
        });
    }
    Ok(out)
}

impl SweepConfig {
    /// Randomized sumset-law cases; tied to the oracle sweep being enabled.
    pub fn sumset_property_cases(&self) -> usize {
        if self.oracle_random_cases == 0 {
            0
        } else {
            1000
        }
    }
}

struct Assertions(Vec<AssertionRecord>);

impl Assertions {
    fn new() -> Self {
        Assertions(Vec::new())
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.0.push(AssertionRecord {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    fn le_real(&mut self, name: &str, lower: &BigReal, upper: &BigReal, detail: &str) {
        self.check(
            name,
            lower <= upper,
            format!("{detail}: {lower} <= {upper}"),
        );
    }

    fn lt_real(&mut self, name: &str, lower: &BigReal, upper: &BigReal, detail: &str) {
        self.check(name, lower < upper, format!("{detail}: {lower} < {upper}"));
    }
}

fn record_skeleton(inst: &Instance, config: &SweepConfig) -> InstanceRecord {
    InstanceRecord {
        key: inst.key(),
        family: inst.family().to_string(),
        group_name: String::new(),
        p: 0,
        d: 0,
        v_size: 0,
        group_order: None,
        irreducible: false,
        scalar_order: None,
        orbit_count: 0,
        smallest_nonzero_orbit: None,
        diamd: None,
        diam: None,
        summand_count: None,
        a_order: None,
        a_normal: None,
        bounds: Vec::new(),
        assertions: Vec::new(),
        oracle_checked: false,
        engine_version: ENGINE_VERSION.to_string(),
        caps: CapsRecord {
            max_v: config.max_v,
            max_group: config.max_group,
            oracle_cap: config.oracle_cap,
        },
        timings_ms: TimingsRecord::default(),
    }
}

fn push_bound(
    bounds: &mut Vec<BoundValueRecord>,
    name: &str,
    value: &BigReal,
    side: &str,
    target: &str,
    assertable: bool,
) {
    bounds.push(BoundValueRecord {
        name: name.to_string(),
        log2: value.log2(),
        value: value.value(),
        side: side.to_string(),
        target: target.to_string(),
        assertable,
    });
}

/// `diamd(F_p, K)` for the order-`k` subgroup `K` of `F_p^x`, by the
/// one-dimensional engine.
fn one_dim_diamd(field: PrimeField, subgroup_order: u64) -> anyhow::Result<u64> {
    let g = field.subgroup_generator(subgroup_order)?;
    let group = GroupSpec::new(
        field,
        1,
        vec![FpMatrix::from_flat(field, 1, vec![g])?],
        "line",
    )?;
    let space = group.space()?;
    let orbits = orbits_on_points(&group, &space);
    Ok(group_diameters(&space, &orbits)?.diamd)
}

/// Cross-checks every orbit of the report against the breadth-first oracle.
fn oracle_check(
    space: &VectorSpace,
    orbits: &OrbitPartition,
    report: &DiameterReport,
    cap: u64,
    asserts: &mut Assertions,
) -> anyhow::Result<bool> {
    if space.size() > cap {
        return Ok(false);
    }
    let elements = orbits.elements_by_orbit();
    let mut all_ok = true;
    for entry in &report.per_orbit {
        let id = orbits.orbit_of(entry.rep) as usize;
        let delta = ConnectionSet::new(space, &elements[id])?;
        let oracle_directed = naive_diameter_oracle(space, &delta)?;
        let sym = delta.symmetrized(space);
        let oracle_undirected = naive_diameter_oracle(space, &sym)?;
        if oracle_directed != entry.directed || oracle_undirected != entry.undirected {
            all_ok = false;
        }
    }
    asserts.check(
        "c9_oracle_agreement",
        all_ok,
        format!(
            "bit-vector engine vs breadth-first oracle on {} orbits",
            report.per_orbit.len()
        ),
    );
    Ok(true)
}

struct Measured {
    group: GroupSpec,
    space: VectorSpace,
    orbits: OrbitPartition,
    facts: orbdiam_core::group::GroupFacts,
    report: DiameterReport,
}

fn measure(group: GroupSpec, config: &SweepConfig) -> anyhow::Result<Measured> {
    let space = group.space_with_cap(config.max_v)?;
    let orbits = orbits_on_points(&group, &space);
    let facts = compute_facts(&group, &space, &orbits, config.max_group);
    let report = group_diameters(&space, &orbits)?;
    Ok(Measured {
        group,
        space,
        orbits,
        facts,
        report,
    })
}

/// The bound checks shared by every measured instance: the general lower
/// bounds, the center-scalar upper bounds, the dimension-only and
/// large-group formulas (the former executed unconditionally as a
/// one-sided inequality, the latter gated on J), and the ratio bounds.
fn common_bound_checks(
    m: &Measured,
    config: &SweepConfig,
    rec: &mut InstanceRecord,
    asserts: &mut Assertions,
) -> anyhow::Result<()> {
    let diamd = BigReal::from_u64(m.report.diamd);
    let diam = BigReal::from_u64(m.report.diam);
    asserts.le_real("diam_le_diamd", &diam, &diamd, "undirected <= directed");
    asserts.check(
        "c8_higman_connected",
        true,
        "no sumset stagnation on any nonzero orbit".into(),
    );

    let order = m.facts.order.exact();
    let s = m.orbits.smallest_nonzero_orbit().unwrap();

    if let Some(h) = order.filter(|&h| h >= 2) {
        let lows = lower_bounds_orbit(s, m.space.size(), h)?;
        push_bound(&mut rec.bounds, "lower_log_group", &lows.log_form_group, "lower", "diam", true);
        push_bound(&mut rec.bounds, "lower_log_orbit", &lows.log_form_orbit, "lower", "diam", true);
        push_bound(&mut rec.bounds, "lower_power", &lows.power_form, "lower", "diam", true);
        asserts.le_real("c7_lower_log_group", &lows.log_form_group, &diam, "log|V|/(3log|H|)");
        asserts.le_real("c7_lower_log_orbit", &lows.log_form_orbit, &diam, "log|V|/log(2s+1)");
        asserts.le_real("c7_lower_power", &lows.power_form, &diam, "(|V|^(1/s)-1)/2");

        let cor = ratio_bounds(m.group.dim(), m.space.size(), h, config.j_table.get(&m.group.dim()).copied())?;
        push_bound(&mut rec.bounds, "ratio_lower", &cor.lower, "lower", "diam", true);
        push_bound(&mut rec.bounds, "ratio_upper", &cor.upper, "upper", "diam", cor.upper_assertable);
        asserts.le_real("ratio_lower", &cor.lower, &diam, "log|V|/(3log|H|)");
        if cor.upper_assertable {
            asserts.le_real("ratio_upper_conditional", &diam, &cor.upper, "f(d)^(log|V|/log|H|)");
        }
    }

    let center = center_upper_bound(m.group.field(), m.group.dim(), m.facts.scalar_subgroup.as_ref())?;
    let coarse = BigReal::from_u64(center.directed_coarse);
    push_bound(&mut rec.bounds, "center_directed_coarse", &coarse, "upper", "diamd", true);
    asserts.le_real("c7_center_directed_coarse", &diamd, &coarse, "(p-1)d");
    if let Some(refined) = center.directed_refined {
        let refined = BigReal::from_u64(refined);
        push_bound(&mut rec.bounds, "center_directed", &refined, "upper", "diamd", true);
        asserts.le_real("c7_center_directed", &diamd, &refined, "diamd(F_p, scalars) * d");
    }
    if let Some(uc) = center.undirected_coarse {
        let uc = BigReal::from_u64(uc);
        push_bound(&mut rec.bounds, "center_undirected_coarse", &uc, "upper", "diam", true);
        asserts.le_real("c7_center_undirected_coarse", &diam, &uc, "(p-1)d/2");
    }
    if let Some(ur) = center.undirected_refined {
        let ur = BigReal::from_u64(ur);
        push_bound(&mut rec.bounds, "center_undirected", &ur, "upper", "diam", true);
        asserts.le_real("c7_center_undirected", &diam, &ur, "diam(F_p, scalars<-1>) * d");
    }

    // dimension-only bound executed unconditionally as a one-sided numeric
    // check (the Lie-type hypothesis is never claimed for suite instances);
    // the large-group bound is gated on the supplied J and the absent flag.
    let t12 = composition_factor_bounds(
        m.group.dim(),
        m.space.size(),
        order.unwrap_or(0),
        false,
        config.j_table.get(&m.group.dim()).copied(),
    );
    let part1 = BigReal::from_log2(22.0 * (m.group.dim() as f64).powi(3));
    push_bound(&mut rec.bounds, "lie_type_diam", &part1, "upper", "diam", true);
    asserts.lt_real("lie_type_bound_executed", &diam, &part1, "2^(22 d^3)");
    if let Some(part2) = t12.diamd_bound {
        push_bound(&mut rec.bounds, "large_group_diamd", &part2, "upper", "diamd", t12.diamd_assertable);
        if t12.diamd_assertable {
            asserts.lt_real("large_group_bound_conditional", &diamd, &part2, "2^(18 d^2) |V|^(d log64/log|H|)");
        }
    }
    Ok(())
}

/// Summand-count bounds with a designated abelian p'-subgroup.
fn summand_bound_checks(
    m: &Measured,
    a: &GroupSpec,
    a_label: &str,
    config: &SweepConfig,
    rec: &mut InstanceRecord,
    asserts: &mut Assertions,
) -> anyhow::Result<()> {
    let dec = summand_count(a, config.max_group)?;
    let normal = is_normal_in(a, &m.group, config.max_group)?;
    rec.summand_count = Some(dec.k);
    rec.a_order = Some(dec.a_order);
    rec.a_normal = Some(normal);
    let bounds = summand_count_bounds(m.group.dim(), m.space.size(), dec.a_order, dec.k, normal)?;
    let diam = BigReal::from_u64(m.report.diam);
    let diamd = BigReal::from_u64(m.report.diamd);
    push_bound(&mut rec.bounds, "summand_diam", &bounds.diam_bound, "upper", "diam", true);
    asserts.lt_real(
        "c6_summand_diam",
        &diam,
        &bounds.diam_bound,
        &format!("A = {a_label}, k = {}, |A| = {}", dec.k, dec.a_order),
    );
    if let Some(part2) = bounds.diamd_bound {
        push_bound(&mut rec.bounds, "summand_diamd_normal", &part2, "upper", "diamd", true);
        asserts.lt_real(
            "c6_summand_diamd_normal",
            &diamd,
            &part2,
            &format!("A = {a_label} normal in H"),
        );
    }
    Ok(())
}

fn fill_measured(rec: &mut InstanceRecord, m: &Measured) {
    rec.group_name = m.group.name().to_string();
    rec.p = m.group.p();
    rec.d = m.group.dim();
    rec.v_size = m.space.size();
    rec.group_order = m.facts.order.exact();
    rec.irreducible = m.facts.irreducible;
    rec.scalar_order = m.facts.scalar_subgroup.as_ref().map(|s| s.order());
    rec.orbit_count = m.orbits.orbit_count();
    rec.smallest_nonzero_orbit = m.orbits.smallest_nonzero_orbit();
    rec.diamd = Some(m.report.diamd);
    rec.diam = Some(m.report.diam);
}

fn process_instance(inst: &Instance, config: &SweepConfig) -> anyhow::Result<InstanceRecord> {
    let started = Instant::now();
    let mut rec = record_skeleton(inst, config);
    let mut asserts = Assertions::new();

    match inst {
        Instance::IdentityTrivial { p } => {
            let field = PrimeField::new(*p)?;
            let group = GroupSpec::trivial(field, 1, format!("trivial on F_{p}"));
            let m = measure(group, config)?;
            fill_measured(&mut rec, &m);
            asserts.check(
                "c1_diamd_trivial",
                m.report.diamd == p - 1,
                format!("diamd(F_{p}, trivial) = {} expected {}", m.report.diamd, p - 1),
            );
            // |H| = 1: the lower-bound and ratio forms need a nontrivial group,
            // so only the center bounds apply here
            let diamd = BigReal::from_u64(m.report.diamd);
            let coarse = BigReal::from_u64(p - 1); // d = 1 here
            asserts.le_real("c7_center_directed_coarse", &diamd, &coarse, "(p-1)d");
            rec.oracle_checked =
                oracle_check(&m.space, &m.orbits, &m.report, config.oracle_cap, &mut asserts)?;
            asserts.check(
                "c8_higman_connected",
                orbdiam_core::diameter::check_higman_connectivity(&m.space, &m.orbits),
                "directed cycles are strongly connected".into(),
            );
        }
        Instance::IdentityNegation { p } => {
            let field = PrimeField::new(*p)?;
            let group = GroupSpec::new(
                field,
                1,
                vec![FpMatrix::neg_identity(field, 1)],
                format!("<-1> on F_{p}"),
            )?;
            let m = measure(group, config)?;
            fill_measured(&mut rec, &m);
            asserts.check(
                "c1_diam_negation",
                m.report.diam == (p - 1) / 2,
                format!(
                    "diam(F_{p}, <-1>) = {} expected {}",
                    m.report.diam,
                    (p - 1) / 2
                ),
            );
            common_bound_checks(&m, config, &mut rec, &mut asserts)?;
            rec.oracle_checked =
                oracle_check(&m.space, &m.orbits, &m.report, config.oracle_cap, &mut asserts)?;
        }
        Instance::Wreath { p, k_order, top, d } => {
            let top_generators = match top.as_str() {
                "cyclic" => cyclic_top(*d),
                "symmetric" => symmetric_top(*d),
                other => anyhow::bail!("unknown top kind {other}"),
            };
            let spec = WreathSpec {
                p: *p,
                k_order: *k_order,
                top_generators,
                d: *d,
            };
            let expected_order = spec.expected_order();
            let m = measure(build_wreath(&spec)?, config)?;
            fill_measured(&mut rec, &m);
            asserts.check(
                "wreath_order",
                m.facts.order == GroupOrder::Exact(expected_order),
                format!("closure order {:?} expected {expected_order}", m.facts.order),
            );
            asserts.check(
                "wreath_irreducible",
                m.facts.irreducible,
                "K wr S acts irreducibly for odd p, nontrivial K".into(),
            );
            // the scalar intersection recovers exactly K
            let scalars = m.facts.scalar_subgroup.as_ref().unwrap();
            asserts.check(
                "wreath_scalars_equal_k",
                scalars.order() == *k_order,
                format!("F_p^x ∩ H has order {} expected {k_order}", scalars.order()),
            );
            let line_diamd = one_dim_diamd(m.group.field(), *k_order)?;
            asserts.check(
                "c2_wreath_equality",
                m.report.diamd == line_diamd * *d as u64,
                format!(
                    "diamd = {} vs diamd(F_p, K) * d = {} * {d}",
                    m.report.diamd, line_diamd
                ),
            );
            common_bound_checks(&m, config, &mut rec, &mut asserts)?;
            let a = GroupSpec::new(
                m.group.field(),
                *d,
                vec![FpMatrix::scalar(m.group.field(), *d, scalars.generator())],
                "scalar subgroup",
            )?;
            summand_bound_checks(&m, &a, "scalar subgroup", config, &mut rec, &mut asserts)?;
            rec.oracle_checked =
                oracle_check(&m.space, &m.orbits, &m.report, config.oracle_cap, &mut asserts)?;
        }
        Instance::Alt { r, p } => {
            let m = measure(build_alt_module(&AltModuleSpec { r: *r, p: *p })?, config)?;
            fill_measured(&mut rec, &m);
            let d = (*r - 1) as u64;
            asserts.check(
                "alt_irreducible",
                m.facts.irreducible,
                "the deleted permutation module is irreducible".into(),
            );
            asserts.check(
                "c3_alt_lower",
                4 * m.report.diam >= (p - 1) * d,
                format!("diam = {} vs (p-1)d/4 = {}", m.report.diam, (p - 1) * d / 4),
            );
            asserts.check(
                "c3_alt_center_upper",
                2 * m.report.diam <= (p - 1) * d,
                format!("diam = {} vs (p-1)d/2 = {}", m.report.diam, (p - 1) * d / 2),
            );
            common_bound_checks(&m, config, &mut rec, &mut asserts)?;
            // the scalar subgroup of a simple nonabelian faithful module is
            // trivial, so the summand-bound route is skipped here
            rec.oracle_checked =
                oracle_check(&m.space, &m.orbits, &m.report, config.oracle_cap, &mut asserts)?;
        }
        Instance::Zsigmondy { d, p, original_p } => {
            let spec = ZsigmondyCyclicSpec { d: *d, p: *p };
            asserts.check(
                "c4_zsig_order_condition",
                spec.order_condition_holds()?,
                format!(
                    "ord({p} mod {}) = {d} (candidate prime was {original_p})",
                    d + 1
                ),
            );
            let m = measure(build_zsigmondy_cyclic(&spec)?, config)?;
            fill_measured(&mut rec, &m);
            // the sandwich (p-1)d/4 <= diam <= (p-1)(d+1)/4, on reals
            let diam = m.report.diam;
            asserts.check(
                "c4_sandwich_lower",
                4 * diam >= (p - 1) * *d as u64,
                format!("diam = {diam} vs (p-1)d/4 = {}", (p - 1) * *d as u64 / 4),
            );
            asserts.check(
                "c4_sandwich_upper",
                4 * diam <= (p - 1) * (*d as u64 + 1),
                format!(
                    "diam = {diam} vs (p-1)(d+1)/4 = {:.2}",
                    (p - 1) as f64 * (*d as f64 + 1.0) / 4.0
                ),
            );
            if (*d, *p) == (4, 3) {
                asserts.check(
                    "c4_zsig43_diam_eq2",
                    diam == 2,
                    format!("sandwich-forced value 2, measured {diam}"),
                );
            }
            common_bound_checks(&m, config, &mut rec, &mut asserts)?;
            // the designated abelian group for the summand bounds is H itself
            let a = m.group.clone();
            summand_bound_checks(&m, &a, "H = <h><-1>", config, &mut rec, &mut asserts)?;
            rec.oracle_checked =
                oracle_check(&m.space, &m.orbits, &m.report, config.oracle_cap, &mut asserts)?;
        }
        Instance::FieldModule { p, f, m_order } => {
            let module = build_field_module(&FieldModuleSpec {
                p: *p,
                f: *f,
                m_order: *m_order,
            })?;
            let group = module.group.clone();
            let space = group.space_with_cap(config.max_v)?;
            let orbits = orbits_on_points(&group, &space);
            let facts = compute_facts(&group, &space, &orbits, config.max_group);

            // additive generation, module irreducibility and sumset
            // stagnation are three routes to the same dichotomy
            let waring = waring_number(&module);
            asserts.check(
                "c5_subfield_screen_consistent",
                module.additively_generating == facts.irreducible
                    && module.additively_generating == waring.is_ok(),
                format!(
                    "screen = {}, irreducible = {}, no stagnation = {}",
                    module.additively_generating,
                    facts.irreducible,
                    waring.is_ok()
                ),
            );
            match waring {
                Ok(n) => {
                    // every nonzero orbit is a multiplicative coset λM, and
                    // n·(λM ∪ {0}) = λ·(n·(M ∪ {0})), so each orbital
                    // diameter equals the one computed on M itself
                    let delta = ConnectionSet::new(&space, &module.m_elements)?;
                    let undirected = orbit_diameter_undirected(&space, &delta)?.0;
                    let m = Measured {
                        group,
                        space,
                        orbits,
                        facts,
                        report: DiameterReport {
                            per_orbit: vec![],
                            diamd: n,
                            diam: undirected,
                        },
                    };
                    fill_measured(&mut rec, &m);
                    let cc = cochrane_cipra_bound(m.space.size(), *m_order)?;
                    push_bound(&mut rec.bounds, "cochrane_cipra", &cc.raw, "upper", "diamd", true);
                    asserts.le_real(
                        "c5_waring_le_cochrane_cipra",
                        &BigReal::from_u64(n),
                        &cc.raw,
                        &format!("waring({m_order}) in F_{}", m.space.size()),
                    );
                    common_bound_checks(&m, config, &mut rec, &mut asserts)?;
                    if m.space.size() <= config.oracle_cap {
                        let oracle_d = naive_diameter_oracle(&m.space, &delta)?;
                        let oracle_u =
                            naive_diameter_oracle(&m.space, &delta.symmetrized(&m.space))?;
                        asserts.check(
                            "c9_oracle_agreement",
                            oracle_d == n && oracle_u == undirected,
                            format!("oracle ({oracle_d}, {oracle_u}) vs engine ({n}, {undirected})"),
                        );
                        rec.oracle_checked = true;
                    }
                }
                Err(Error::Stagnation { covered, total }) => {
                    rec.group_name = group.name().to_string();
                    rec.p = *p;
                    rec.d = *f;
                    rec.v_size = space.size();
                    rec.group_order = facts.order.exact();
                    rec.irreducible = facts.irreducible;
                    rec.scalar_order = facts.scalar_subgroup.as_ref().map(|s| s.order());
                    rec.orbit_count = orbits.orbit_count();
                    rec.smallest_nonzero_orbit = orbits.smallest_nonzero_orbit();
                    asserts.check(
                        "reject_expected",
                        true,
                        format!("M lies in a proper subfield: stagnated at {covered}/{total}"),
                    );
                }
                Err(other) => return Err(other.into()),
            }
        }
        Instance::ReducibleCounterexample => {
            let field = PrimeField::new(5)?;
            let group = GroupSpec::new(
                field,
                2,
                vec![FpMatrix::from_rows(field, &[vec![2, 0], vec![0, 1]])?],
                "diag(2,1) reducible counterexample",
            )?;
            let space = group.space_with_cap(config.max_v)?;
            let orbits = orbits_on_points(&group, &space);
            let facts = compute_facts(&group, &space, &orbits, config.max_group);
            rec.group_name = group.name().to_string();
            rec.p = 5;
            rec.d = 2;
            rec.v_size = 25;
            rec.group_order = facts.order.exact();
            rec.irreducible = facts.irreducible;
            rec.scalar_order = facts.scalar_subgroup.as_ref().map(|s| s.order());
            rec.orbit_count = orbits.orbit_count();
            rec.smallest_nonzero_orbit = orbits.smallest_nonzero_orbit();
            asserts.check(
                "c8_reducible_not_irreducible",
                !facts.irreducible,
                "spin of an axis vector stays on the axis".into(),
            );
            let connected = orbdiam_core::diameter::check_higman_connectivity(&space, &orbits);
            asserts.check(
                "c8_reducible_detected",
                !connected,
                "some orbital digraph is disconnected (sumset stagnation)".into(),
            );
            let failed = group_diameters(&space, &orbits);
            asserts.check(
                "reject_expected",
                matches!(failed, Err(Error::Stagnation { .. })),
                format!("group_diameters -> {failed:?}"),
            );
        }
        Instance::WreathRejectP2 => {
            let spec = WreathSpec {
                p: 2,
                k_order: 1,
                top_generators: symmetric_top(2),
                d: 2,
            };
            let result = build_wreath(&spec);
            rec.p = 2;
            rec.d = 2;
            asserts.check(
                "reject_expected",
                matches!(result, Err(Error::InvalidInput(_))),
                format!("p = 2 wreath construction -> {result:?}"),
            );
        }
        Instance::OracleRandom { p, d, cases, seed } => {
            let field = PrimeField::new(*p)?;
            let space = VectorSpace::new(field, *d)?;
            rec.p = *p;
            rec.d = *d;
            rec.v_size = space.size();
            let mut rng = SplitMix64::new(seed ^ (p << 8) ^ (*d as u64));
            let mut agree = 0usize;
            for case in 0..*cases {
                // a random nonempty set of nonzero points
                let count = 1 + rng.below(space.size() - 1) / 2;
                let mut points = Vec::new();
                for _ in 0..count {
                    points.push(1 + rng.below(space.size() - 1));
                }
                points.sort_unstable();
                points.dedup();
                let delta = ConnectionSet::new(&space, &points)?;
                let engine = orbit_diameter_directed(&space, &delta);
                let oracle = naive_diameter_oracle(&space, &delta);
                let matched = match (&engine, &oracle) {
                    (Ok((n, _)), Ok(m)) => n == m,
                    (Err(Error::Stagnation { .. }), Err(Error::Stagnation { .. })) => true,
                    _ => false,
                };
                if matched {
                    agree += 1;
                } else {
                    asserts.check(
                        "c9_random_case",
                        false,
                        format!("case {case}: engine {engine:?} vs oracle {oracle:?}"),
                    );
                }
                // vertex transitivity: a random nonzero start has the same
                // eccentricity as 0
                if case % 10 == 0 {
                    if let Ok(reference) = &oracle {
                        let start = 1 + rng.below(space.size() - 1);
                        let ecc = naive_eccentricity(&space, &delta, start, config.oracle_cap)?;
                        asserts.check(
                            "c9_vertex_transitivity",
                            ecc == *reference,
                            format!("ecc({start}) = {ecc} vs ecc(0) = {reference}"),
                        );
                    }
                }
            }
            asserts.check(
                "c9_oracle_agreement_random",
                agree == *cases,
                format!("{agree}/{cases} random connection sets agree"),
            );
            rec.oracle_checked = true;
        }
        Instance::SumsetLaws { cases, seed } => {
            let mut rng = SplitMix64::new(*seed);
            let spaces: Vec<VectorSpace> = [(2u64, 5usize), (3, 3), (5, 2), (7, 2), (11, 1)]
                .iter()
                .map(|&(p, d)| VectorSpace::new(PrimeField::new(p).unwrap(), d).unwrap())
                .collect();
            let mut monotonic_ok = 0usize;
            let mut nesting_ok = 0usize;
            let mut subgroup_ok = 0usize;
            let mut stable_ok = 0usize;
            for _ in 0..*cases {
                let space = &spaces[rng.below(spaces.len() as u64) as usize];
                let count = 1 + rng.below(space.size() - 1) / 3;
                let mut points = vec![];
                for _ in 0..count {
                    points.push(1 + rng.below(space.size() - 1));
                }
                points.sort_unstable();
                points.dedup();
                let delta = ConnectionSet::new(space, &points)?;
                // iterate S_n = S_{n-1} + (Δ ∪ {0}) a few steps; sizes must
                // be monotone and the sets nested
                let mut s = VectorSet::zero_singleton(space);
                let mut monotone = true;
                let mut nested = true;
                let mut covered_stable = true;
                let mut was_full = false;
                for _ in 0..6 {
                    let mut next = sumset_step(space, &s, &delta);
                    next.union_with(&s);
                    if next.len() < s.len() {
                        monotone = false;
                    }
                    if !s.is_subset_of(&next) {
                        nested = false;
                    }
                    if was_full && !next.is_full() {
                        covered_stable = false;
                    }
                    was_full = next.is_full();
                    s = next;
                }
                monotonic_ok += monotone as usize;
                nesting_ok += nested as usize;
                stable_ok += covered_stable as usize;
                // a random subspace is stable under its own sumset
                let w_seeds: Vec<u64> =
                    (0..1 + rng.below(space.dim() as u64)).map(|_| rng.below(space.size())).collect();
                let mut members = vec![0u64];
                let mut sub = VectorSet::zero_singleton(space);
                // close the seed set under addition to get the generated subgroup
                let mut frontier = vec![0u64];
                while let Some(v) = frontier.pop() {
                    for &g in &w_seeds {
                        let w = space.add_points(v, g);
                        if !sub.contains(w) {
                            sub.insert(w);
                            members.push(w);
                            frontier.push(w);
                        }
                    }
                }
                let nonzero: Vec<u64> = members.iter().copied().filter(|&x| x != 0).collect();
                if nonzero.is_empty() {
                    subgroup_ok += 1;
                } else {
                    let wdelta = ConnectionSet::new(space, &nonzero)?;
                    let mut wplus = sumset_step(space, &sub, &wdelta);
                    wplus.union_with(&sub);
                    subgroup_ok += (wplus == sub) as usize;
                }
            }
            asserts.check(
                "c10_monotonicity",
                monotonic_ok == *cases,
                format!("{monotonic_ok}/{cases}"),
            );
            asserts.check(
                "c10_nesting",
                nesting_ok == *cases,
                format!("{nesting_ok}/{cases}"),
            );
            asserts.check(
                "c10_stability_after_cover",
                stable_ok == *cases,
                format!("{stable_ok}/{cases}"),
            );
            asserts.check(
                "c10_subgroup_law",
                subgroup_ok == *cases,
                format!("{subgroup_ok}/{cases}"),
            );
        }
    }

    rec.assertions = asserts.0;
    rec.timings_ms.total_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(rec)
}

fn config_digest(config: &SweepConfig) -> String {
    // FNV-1a over the serialized config; keys cache entries to the exact
    // configuration that produced them
    let text = serde_json::to_string(config).expect("config serializes");
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

fn cache_path(dir: &Path, key: &str, digest: &str) -> PathBuf {
    dir.join(format!("{key}-{digest}.json"))
}

/// Runs every configured instance, returning records sorted by key.
/// With a cache directory, records are loaded from matching cache entries
/// and stored after computation, which also makes re-emission byte-stable.
pub fn run_verification_suite(
    config: &SweepConfig,
    cache_dir: Option<&Path>,
) -> anyhow::Result<Vec<InstanceRecord>> {
    config.validate()?;
    let instances = build_instances(config)?;
    let digest = config_digest(config);
    if let Some(dir) = cache_dir {
        std::fs::create_dir_all(dir)?;
    }
    let mut records = instances
        .par_iter()
        .map(|inst| -> anyhow::Result<InstanceRecord> {
            let key = inst.key();
            if let Some(dir) = cache_dir {
                let path = cache_path(dir, &key, &digest);
                if let Ok(text) = std::fs::read_to_string(&path) {
                    if let Ok(rec) = serde_json::from_str::<InstanceRecord>(&text) {
                        if rec.engine_version == ENGINE_VERSION {
                            return Ok(rec);
                        }
                    }
                }
            }
            let rec = process_instance(inst, config)
                .map_err(|e| anyhow::anyhow!("instance {key}: {e}"))?;
            if let Some(dir) = cache_dir {
                let path = cache_path(dir, &key, &digest);
                std::fs::write(path, serde_json::to_string_pretty(&rec)?)?;
            }
            Ok(rec)
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(records)
}

/// Recomputes one instance fresh (no cache) for cache-correctness spot
/// checks.
pub fn recompute_instance(config: &SweepConfig, key: &str) -> anyhow::Result<InstanceRecord> {
    let instances = build_instances(config)?;
    let inst = instances
        .iter()
        .find(|i| i.key() == key)
        .ok_or_else(|| anyhow::anyhow!("no instance with key {key}"))?;
    process_instance(inst, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next(), b.next());
        }
        let mut c = SplitMix64::new(43);
        assert_ne!(SplitMix64::new(42).next(), c.next());
    }

    #[test]
    fn empty_config_gives_no_records() {
        let records = run_verification_suite(&SweepConfig::empty(), None).unwrap();
        assert!(records.is_empty());
    }

    #[test]
    fn instance_keys_are_unique() {
        let instances = build_instances(&SweepConfig::default_suite()).unwrap();
        let mut keys: Vec<String> = instances.iter().map(|i| i.key()).collect();
        let total = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), total);
        assert!(total > 3000, "expected a large default sweep, got {total}");
    }

    #[test]
    fn zsigmondy_screening_substitutes_bad_primes() {
        let mut cfg = SweepConfig::empty();
        // ord(11 mod 5) = 1, so (4, 11) must be replaced by 13
        cfg.zsigmondy_candidates = vec![(4, 11)];
        let instances = build_instances(&cfg).unwrap();
        assert_eq!(instances.len(), 1);
        assert_eq!(instances[0].key(), "zsig-d4-p013");
    }
}
