//! Explicit bound formulas for orbital diameters, each paired with the exact
//! quantity it constrains. Values are carried in log2 space; several of them
//! (for example `2^(22 d^3)`) are astronomically large by design.

use crate::bigreal::BigReal;
use crate::diameter::orbit_diameter_directed;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::ScalarSubgroup;
use crate::space::VectorSpace;
use crate::sumset::ConnectionSet;

const LN4: f64 = 1.3862943611198906; // ln 4
const LN64: f64 = 4.1588830833596715; // ln 64

/// Which exact quantity a bound constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// the directed maximum `diamd(V, H)`
    Directed,
    /// the undirected maximum `diam(V, H)`
    Undirected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// One named bound value with its applicability.
#[derive(Debug, Clone)]
pub struct BoundEntry {
    pub name: String,
    pub value: BigReal,
    pub side: Side,
    pub target: Target,
    /// strict inequality (`<` / `>`) rather than `<=` / `>=`
    pub strict: bool,
    /// false when a hypothesis is unverified (e.g. no J(d) supplied)
    pub assertable: bool,
    pub note: String,
}

/// The exact diameters a report is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactDiameters {
    pub diamd: u64,
    pub diam: u64,
}

/// Named bounds paired with exact diameters.
#[derive(Debug, Clone, Default)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
    pub exact: Option<ExactDiameters>,
}

impl BoundReport {
    pub fn push(
        &mut self,
        name: impl Into<String>,
        value: BigReal,
        side: Side,
        target: Target,
        strict: bool,
        assertable: bool,
        note: impl Into<String>,
    ) {
        self.entries.push(BoundEntry {
            name: name.into(),
            value,
            side,
            target,
            strict,
            assertable,
            note: note.into(),
        });
    }

    /// Entries whose asserted inequality fails against the exact diameters.
    /// Comparisons are on reals: a lower bound `l` asserts `diam >= l`
    /// directly, with no integer rounding.
    pub fn violations(&self) -> Vec<String> {
        let Some(exact) = self.exact else {
            return vec![];
        };
        let mut out = Vec::new();
        for e in &self.entries {
            if !e.assertable {
                continue;
            }
            let measured = BigReal::from_u64(match e.target {
                Target::Directed => exact.diamd,
                Target::Undirected => exact.diam,
            });
            let holds = match (e.side, e.strict) {
                (Side::Lower, false) => e.value <= measured,
                (Side::Lower, true) => e.value < measured,
                (Side::Upper, false) => e.value >= measured,
                (Side::Upper, true) => e.value > measured,
            };
            if !holds {
                out.push(format!(
                    "{}: bound {} vs exact {} ({:?} {:?})",
                    e.name, e.value, measured, e.side, e.target
                ));
            }
        }
        out
    }
}

/// The three general lower bounds for `diam(V, H)` in terms of `|V|`, `|H|`
/// and the size `s` of the smallest nonzero orbit:
/// `log|V| / (3 log|H|)`, `log|V| / log(2s+1)` and `(|V|^(1/s) - 1)/2`.
#[derive(Debug, Clone, Copy)]
pub struct OrbitLowerBounds {
    pub log_form_group: BigReal,
    pub log_form_orbit: BigReal,
    pub power_form: BigReal,
}

pub fn lower_bounds_orbit(
    smallest_orbit: u64,
    v_size: u64,
    h_size: u64,
) -> Result<OrbitLowerBounds> {
    if smallest_orbit == 0 {
        return Err(Error::invalid("smallest orbit size must be positive"));
    }
    if h_size < 2 {
        return Err(Error::invalid("the group must be nontrivial"));
    }
    let ln_v = (v_size as f64).ln();
    let log_form_group = BigReal::from_value(ln_v / (3.0 * (h_size as f64).ln()));
    let log_form_orbit =
        BigReal::from_value(ln_v / ((2 * smallest_orbit + 1) as f64).ln());
    let root_log2 = (v_size as f64).log2() / smallest_orbit as f64;
    let power_form = if root_log2 < 512.0 {
        BigReal::from_value((root_log2.exp2() - 1.0) / 2.0)
    } else {
        // the -1 is lost to rounding anyway at this magnitude
        BigReal::from_log2(root_log2 - 1.0)
    };
    Ok(OrbitLowerBounds {
        log_form_group,
        log_form_orbit,
        power_form,
    })
}

/// Upper bounds through the scalar intersection: the refined forms multiply
/// an exactly computed one-dimensional diameter by `d`; the coarse forms are
/// `(p-1)d` and, for odd `p`, `(p-1)d/2`.
#[derive(Debug, Clone, Copy)]
pub struct CenterBounds {
    /// `diamd(F_p, F_p^x ∩ H) * d`
    pub directed_refined: Option<u64>,
    /// `diam(F_p, (F_p^x ∩ H)<-1>) * d`, odd `p` only
    pub undirected_refined: Option<u64>,
    pub directed_coarse: u64,
    /// odd `p` only
    pub undirected_coarse: Option<u64>,
}

pub fn center_upper_bound(
    field: PrimeField,
    d: usize,
    scalars: Option<&ScalarSubgroup>,
) -> Result<CenterBounds> {
    let p = field.modulus();
    let directed_coarse = (p - 1) * d as u64;
    let undirected_coarse = field.is_odd().then(|| (p - 1) * d as u64 / 2);
    let (directed_refined, undirected_refined) = match scalars {
        None => (None, None),
        Some(sub) => {
            // the orbits of a subgroup K of F_p^x on F_p are the cosets λK,
            // and n·(λK ∪ {0}) = λ·(n·(K ∪ {0})), so one orbit run gives
            // the diameter of every orbit
            let space = VectorSpace::new(field, 1)?;
            let delta = ConnectionSet::new(&space, sub.elements())?;
            let directed_1d = orbit_diameter_directed(&space, &delta)?.0;
            let directed = Some(directed_1d * d as u64);
            let undirected = if field.is_odd() {
                let undirected_1d = orbit_diameter_directed(&space, &delta.symmetrized(&space))?.0;
                Some(undirected_1d * d as u64)
            } else {
                None
            };
            (directed, undirected)
        }
    };
    Ok(CenterBounds {
        directed_refined,
        undirected_refined,
        directed_coarse,
        undirected_coarse,
    })
}

/// The additive Waring bound for a multiplicative subgroup `M` of `F_q^x`
/// that generates `F_q` additively: `n·M = F_q` for every
/// `n >= 633 (2(q-1)/|M|)^(log 4 / log |M|)`.
#[derive(Debug, Clone, Copy)]
pub struct CochraneCipraBound {
    pub raw: BigReal,
    pub ceiling: Option<u64>,
}

pub fn cochrane_cipra_bound(q: u64, m_size: u64) -> Result<CochraneCipraBound> {
    if m_size <= 1 {
        return Err(Error::invalid("the subgroup M must be nontrivial"));
    }
    if q < 2 || m_size > q - 1 {
        return Err(Error::invalid("need |M| <= q - 1"));
    }
    let exponent = LN4 / (m_size as f64).ln();
    let base = 2.0 * (q - 1) as f64 / m_size as f64;
    let raw = BigReal::from_value(633.0).mul(&BigReal::from_value(base).powf(exponent));
    Ok(CochraneCipraBound {
        raw,
        ceiling: raw.ceil_u64(),
    })
}

/// The explicit two-part bound in terms of an abelian p'-subgroup `A` with
/// `k` irreducible summands: always
/// `diam < 322 d * 144^(k(k+1)) * |V|^(k(k+1) log4 / log|A|)`, and when `A`
/// is normal additionally
/// `diamd < d * 2576^(k(k+1)) * |V|^((k+1) log4 / log|A|)`.
#[derive(Debug, Clone, Copy)]
pub struct SummandCountBounds {
    pub diam_bound: BigReal,
    /// present only when `A` is normal in `H`
    pub diamd_bound: Option<BigReal>,
}

pub fn summand_count_bounds(
    d: usize,
    v_size: u64,
    a_size: u64,
    k: usize,
    normal: bool,
) -> Result<SummandCountBounds> {
    if k < 1 || k > d {
        return Err(Error::invalid(format!("k = {k} out of range 1..={d}")));
    }
    if a_size < 2 {
        return Err(Error::invalid("A must be nontrivial"));
    }
    let kk1 = (k * (k + 1)) as f64;
    let ratio = LN4 / (a_size as f64).ln();
    let log2_v = (v_size as f64).log2();
    let diam_bound = BigReal::from_log2(
        (322.0 * d as f64).log2() + kk1 * 144f64.log2() + kk1 * ratio * log2_v,
    );
    let diamd_bound = normal.then(|| {
        BigReal::from_log2(
            (d as f64).log2() + kk1 * 2576f64.log2() + (k as f64 + 1.0) * ratio * log2_v,
        )
    });
    Ok(SummandCountBounds {
        diam_bound,
        diamd_bound,
    })
}

/// The classification-free headline bounds. Part 1 applies when `H` has a
/// Lie-type composition factor in characteristic `p` (a user-declared flag):
/// `diam < 2^(22 d^3)`. Part 2 applies in the complementary case once
/// `|H| >= J(d)^2` for the (nonconstructive) Larsen-Pink function `J`:
/// `diamd < 2^(18 d^2) * |V|^(d log 64 / log |H|)`.
#[derive(Debug, Clone, Copy)]
pub struct CompositionFactorBounds {
    pub lie_diam_bound: Option<BigReal>,
    pub diamd_bound: Option<BigReal>,
    /// part 2 verified applicable: no Lie-type flag, J supplied, |H| >= J^2
    pub diamd_assertable: bool,
}

pub fn composition_factor_bounds(
    d: usize,
    v_size: u64,
    h_size: u64,
    lie_type: bool,
    j: Option<u64>,
) -> CompositionFactorBounds {
    let d3 = (d * d * d) as f64;
    let lie_diam_bound = lie_type.then(|| BigReal::from_log2(22.0 * d3));
    let diamd_bound = (h_size >= 2).then(|| {
        let d2 = (d * d) as f64;
        let ratio = d as f64 * LN64 / (h_size as f64).ln();
        BigReal::from_log2(18.0 * d2 + ratio * (v_size as f64).log2())
    });
    let diamd_assertable = !lie_type
        && diamd_bound.is_some()
        && j.is_some_and(|j| j >= 1 && (h_size as u128) >= (j as u128) * (j as u128));
    CompositionFactorBounds {
        lie_diam_bound,
        diamd_bound,
        diamd_assertable,
    }
}

/// The ratio bounds: always `log|V| / (3 log|H|) <= diam(V, H)`, and
/// `diam(V, H) <= f(d)^(log|V| / log|H|)` with
/// `f(d) = max(J(d)^4, max(2^(22 d^3), 2^(18 d^2) * 64^d)^d)`. The upper
/// bound is assertable only with a supplied `J`.
#[derive(Debug, Clone, Copy)]
pub struct RatioBounds {
    pub lower: BigReal,
    pub upper: BigReal,
    pub upper_assertable: bool,
    /// `log2 f(d)` as used in the upper bound
    pub f_log2: f64,
}

pub fn ratio_bounds(d: usize, v_size: u64, h_size: u64, j: Option<u64>) -> Result<RatioBounds> {
    if h_size < 2 {
        return Err(Error::invalid("the group must be nontrivial"));
    }
    if j == Some(0) {
        return Err(Error::invalid("J must be positive"));
    }
    let lower = BigReal::from_value((v_size as f64).ln() / (3.0 * (h_size as f64).ln()));
    let d_f = d as f64;
    let base_log2 = d_f * f64::max(22.0 * d_f * d_f * d_f, 18.0 * d_f * d_f + 6.0 * d_f);
    let f_log2 = match j {
        Some(j) => f64::max(4.0 * (j as f64).log2(), base_log2),
        None => base_log2,
    };
    let ratio = (v_size as f64).ln() / (h_size as f64).ln();
    Ok(RatioBounds {
        lower,
        upper: BigReal::from_log2(f_log2 * ratio),
        upper_assertable: j.is_some(),
        f_log2,
    })
}
