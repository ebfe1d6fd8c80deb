//! Constructors for the extremal group families and the field-as-module
//! Waring instances, plus Zsigmondy prime searches.

use std::collections::HashSet;

use crate::diameter::orbit_diameter_directed;
use crate::error::{Error, Result};
use crate::extension::{subgroup_lies_in_proper_subfield, ExtensionFieldSpec};
use crate::field::{distinct_prime_factors_u128, is_prime, PrimeField};
use crate::group::{orbits_on_points, GroupSpec};
use crate::linalg::Subspace;
use crate::matrix::FpMatrix;
use crate::poly::FpPolynomial;
use crate::space::VectorSpace;
use crate::sumset::ConnectionSet;

/// `K wr S` acting imprimitively on `F_p^d`: `K` the subgroup of `F_p^x` of
/// order `k_order` repeated along the diagonal, permuted by a transitive
/// top group `S` of degree `d`.
#[derive(Debug, Clone)]
pub struct WreathSpec {
    pub p: u64,
    pub k_order: u64,
    /// permutations of `0..d`, generating a transitive group
    pub top_generators: Vec<Vec<usize>>,
    pub d: usize,
}

/// Generator images of the cyclic top group of degree `d`.
pub fn cyclic_top(d: usize) -> Vec<Vec<usize>> {
    vec![(0..d).map(|i| (i + 1) % d).collect()]
}

/// Generator images of the full symmetric top group of degree `d`.
pub fn symmetric_top(d: usize) -> Vec<Vec<usize>> {
    let mut swap: Vec<usize> = (0..d).collect();
    swap.swap(0, 1);
    if d == 2 {
        return vec![swap];
    }
    vec![swap, cyclic_top(d).pop().unwrap()]
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

/// Order of the permutation group generated by the given images.
pub fn permutation_group_order(degree: usize, gens: &[Vec<usize>]) -> u64 {
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    while let Some(cur) = queue.pop() {
        for g in gens {
            let next = compose(g, &cur);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen.len() as u64
}

fn is_transitive(degree: usize, gens: &[Vec<usize>]) -> bool {
    let mut reached = vec![false; degree];
    reached[0] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for g in gens {
            let j = g[i];
            if !reached[j] {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

impl WreathSpec {
    fn validate(&self) -> Result<PrimeField> {
        let field = PrimeField::new(self.p)?;
        if !field.is_odd() {
            return Err(Error::invalid("the wreath family needs an odd prime p"));
        }
        if self.k_order <= 1 {
            return Err(Error::invalid("K must be nontrivial"));
        }
        if (self.p - 1) % self.k_order != 0 {
            return Err(Error::invalid(format!(
                "K order {} does not divide p - 1 = {}",
                self.k_order,
                self.p - 1
            )));
        }
        if self.d < 2 {
            return Err(Error::invalid("the top degree must be at least 2"));
        }
        if self.top_generators.is_empty() {
            return Err(Error::invalid("the top group needs generators"));
        }
        for g in &self.top_generators {
            let mut seen = vec![false; self.d];
            if g.len() != self.d || g.iter().any(|&i| i >= self.d || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::invalid("top generator is not a permutation of the degree"));
            }
        }
        if !is_transitive(self.d, &self.top_generators) {
            return Err(Error::invalid("the top group is not transitive"));
        }
        Ok(field)
    }

    /// `|K|^d * |S|`.
    pub fn expected_order(&self) -> u64 {
        self.k_order.pow(self.d as u32) * permutation_group_order(self.d, &self.top_generators)
    }
}

/// One diagonal generator in slot 0 plus the top permutation matrices;
/// transitivity of `S` conjugates the slot around, so the closure is the
/// full `K^d ⋊ S`.
pub fn build_wreath(spec: &WreathSpec) -> Result<GroupSpec> {
    let field = spec.validate()?;
    let g = field.subgroup_generator(spec.k_order)?;
    let mut slot0 = FpMatrix::identity(field, spec.d);
    slot0.set(0, 0, g);
    let mut gens = vec![slot0];
    for perm in &spec.top_generators {
        gens.push(FpMatrix::permutation(field, perm)?);
    }
    GroupSpec::new(
        field,
        spec.d,
        gens,
        format!("wreath K{} wr S (p={}, d={})", spec.k_order, spec.p, spec.d),
    )
}

/// The deleted permutation module of `Alt(r)`: the sum-zero subspace of the
/// natural module, of dimension `d = r - 1`, over an odd prime not
/// dividing `r`.
#[derive(Debug, Clone, Copy)]
pub struct AltModuleSpec {
    pub r: usize,
    pub p: u64,
}

/// Matrix of a permutation of `{0..r-1}` on the basis `e_i = v_i - v_(r-1)`,
/// `i = 0..r-2`, of the sum-zero subspace.
fn deleted_module_matrix(field: PrimeField, perm: &[usize]) -> FpMatrix {
    let r = perm.len();
    let d = r - 1;
    let mut m = FpMatrix::scalar(field, d, 0);
    // sigma(e_i) = E(sigma(i)) - E(sigma(r-1)), with E(r-1) = 0
    let last_image = perm[r - 1];
    for i in 0..d {
        let img = perm[i];
        if img < d {
            m.set(img, i, field.add(m.get(img, i), 1));
        }
        if last_image < d {
            m.set(last_image, i, field.sub(m.get(last_image, i), 1));
        }
    }
    m
}

pub fn build_alt_module(spec: &AltModuleSpec) -> Result<GroupSpec> {
    let field = PrimeField::new(spec.p)?;
    if spec.r < 5 {
        return Err(Error::invalid("need r >= 5"));
    }
    if !field.is_odd() {
        return Err(Error::invalid("need an odd prime p"));
    }
    if spec.p != 0 && spec.r as u64 % spec.p == 0 {
        return Err(Error::invalid(format!(
            "p = {} divides r = {}; the sum-zero module would not split off",
            spec.p, spec.r
        )));
    }
    let r = spec.r;
    // (0 1 2) together with the full cycle for odd r, or the r-1 cycle
    // fixing 0 for even r
    let mut three_cycle: Vec<usize> = (0..r).collect();
    three_cycle[0] = 1;
    three_cycle[1] = 2;
    three_cycle[2] = 0;
    let big_cycle: Vec<usize> = if r % 2 == 1 {
        (0..r).map(|i| (i + 1) % r).collect()
    } else {
        (0..r).map(|i| if i == 0 { 0 } else { i % (r - 1) + 1 }).collect()
    };
    let gens = vec![
        deleted_module_matrix(field, &three_cycle),
        deleted_module_matrix(field, &big_cycle),
    ];
    GroupSpec::new(
        field,
        r - 1,
        gens,
        format!("alt Alt({r}) deleted module (p={})", spec.p),
    )
}

/// The cyclic group `<h><-1>` where `h` has prime order `d + 1` acting
/// irreducibly; exists exactly when `d + 1` is an odd prime and the
/// multiplicative order of `p` modulo `d + 1` is `d`.
#[derive(Debug, Clone, Copy)]
pub struct ZsigmondyCyclicSpec {
    pub d: usize,
    pub p: u64,
}

impl ZsigmondyCyclicSpec {
    pub fn order_condition_holds(&self) -> Result<bool> {
        let modulus = self.d as u64 + 1;
        if !is_prime(modulus) || modulus == 2 {
            return Err(Error::invalid(format!("d + 1 = {modulus} must be an odd prime")));
        }
        let ring = PrimeField::new(modulus)?;
        let residue = self.p % modulus;
        if residue == 0 {
            return Ok(false);
        }
        Ok(ring.element_order(residue)? == self.d as u64)
    }
}

/// Builds `H = <h, -I>` with `h` the companion matrix of
/// `x^d + x^(d-1) + ... + 1`, then checks the advertised orbit structure:
/// every nonzero orbit has size `2(d+1)` and its positive half is a basis
/// together with the negated sum.
pub fn build_zsigmondy_cyclic(spec: &ZsigmondyCyclicSpec) -> Result<GroupSpec> {
    let field = PrimeField::new(spec.p)?;
    if !field.is_odd() {
        return Err(Error::invalid("need an odd prime p"));
    }
    if !spec.order_condition_holds()? {
        return Err(Error::invalid(format!(
            "ord({} mod {}) != {}; h would not act irreducibly",
            spec.p,
            spec.d + 1,
            spec.d
        )));
    }
    let all_ones = FpPolynomial::new(field, vec![1; spec.d + 1]);
    let h = FpMatrix::companion(&all_ones)?;
    debug_assert_eq!(h.order(1000).unwrap(), spec.d as u64 + 1);
    let group = GroupSpec::new(
        field,
        spec.d,
        vec![h.clone(), FpMatrix::neg_identity(field, spec.d)],
        format!("zsigmondy cyclic <h><-1> (d={}, p={})", spec.d, spec.p),
    )?;

    let space = group.space()?;
    let orbits = orbits_on_points(&group, &space);
    let expected = 2 * (spec.d as u64 + 1);
    for id in orbits.nonzero_orbit_ids() {
        let size = orbits.sizes()[id as usize];
        if size != expected {
            return Err(Error::CrossCheck(format!(
                "nonzero orbit has size {size}, expected {expected}"
            )));
        }
        let rep = orbits.reps()[id as usize];
        // the positive half: rep, h rep, .., h^d rep
        let mut half = Vec::with_capacity(spec.d + 1);
        let mut v = space.decode(rep);
        for _ in 0..=spec.d {
            half.push(v.clone());
            v = h.apply_coords_unchecked(&v);
        }
        let mut sum = vec![0u64; spec.d];
        for w in &half {
            for (s, &c) in sum.iter_mut().zip(w) {
                *s = field.add(*s, c);
            }
        }
        if sum.iter().any(|&c| c != 0) {
            return Err(Error::CrossCheck("orbit half does not sum to zero".into()));
        }
        if !Subspace::from_vectors(field, spec.d, &half).is_full() {
            return Err(Error::CrossCheck("orbit half does not span".into()));
        }
    }
    Ok(group)
}

/// All odd primes `p <= limit` whose multiplicative order modulo the prime
/// `d + 1` equals `d`, i.e. the primes for which the cyclic construction
/// above exists.
pub fn find_zsigmondy_p(d: usize, p_limit: u64) -> Result<Vec<u64>> {
    let modulus = d as u64 + 1;
    if !is_prime(modulus) {
        return Err(Error::invalid(format!("d + 1 = {modulus} must be prime")));
    }
    let ring = PrimeField::new(modulus)?;
    let mut out = Vec::new();
    let mut p = 3;
    while p <= p_limit {
        if is_prime(p) {
            let residue = p % modulus;
            if residue != 0 && ring.element_order(residue)? == d as u64 {
                out.push(p);
            }
        }
        p += 2;
    }
    Ok(out)
}

/// Zsigmondy primes for `(q, d)`: primes dividing `q^d - 1` but no
/// `q^i - 1` with `i < d`. Each result necessarily satisfies
/// `r ≡ 1 (mod d)`; that congruence is re-checked and a failure is a hard
/// error. The list is empty exactly for the classical exception `(2, 6)`
/// and such cases.
pub fn find_zsigmondy_primes(q: u64, d: u32) -> Result<Vec<u128>> {
    if q < 2 || d < 3 {
        return Err(Error::invalid("need q >= 2 and d >= 3"));
    }
    let qd = (q as u128)
        .checked_pow(d)
        .ok_or_else(|| Error::invalid("q^d overflows"))?;
    let mut out = Vec::new();
    for r in distinct_prime_factors_u128(qd - 1)? {
        let mut primitive = true;
        for i in 1..d {
            // q^i mod r
            let mut acc: u128 = 1;
            for _ in 0..i {
                acc = acc * (q as u128) % r;
            }
            if acc == 1 {
                primitive = false;
                break;
            }
        }
        if primitive {
            if r % d as u128 != 1 {
                return Err(Error::CrossCheck(format!(
                    "zsigmondy prime {r} is not 1 mod {d}"
                )));
            }
            out.push(r);
        }
    }
    Ok(out)
}

/// `F_q` as an `F_p`-module acted on by the order-`m` multiplicative
/// subgroup `M <= F_q^x`.
#[derive(Debug, Clone, Copy)]
pub struct FieldModuleSpec {
    pub p: u64,
    pub f: usize,
    pub m_order: u64,
}

#[derive(Debug, Clone)]
pub struct FieldModule {
    pub group: GroupSpec,
    pub ext: ExtensionFieldSpec,
    /// point indices of the elements of `M`
    pub m_elements: Vec<u64>,
    /// false when `M` lies in a proper subfield, in which case the sumset
    /// iteration stagnates there
    pub additively_generating: bool,
}

pub fn build_field_module(spec: &FieldModuleSpec) -> Result<FieldModule> {
    let field = PrimeField::new(spec.p)?;
    let ext = ExtensionFieldSpec::with_least_modulus(field, spec.f)?;
    let q = ext.q();
    if spec.m_order <= 1 {
        return Err(Error::invalid("M must be nontrivial"));
    }
    if (q - 1) % spec.m_order != 0 {
        return Err(Error::invalid(format!(
            "{} does not divide q - 1 = {}",
            spec.m_order,
            q - 1
        )));
    }
    let gamma = ext.multiplicative_generator();
    let m_gen = ext.pow_element(&gamma, (q - 1) / spec.m_order);
    debug_assert_eq!(ext.element_order(&m_gen).unwrap(), spec.m_order);
    let matrix = ext.multiplication_matrix(&m_gen);
    let group = GroupSpec::new(
        field,
        spec.f,
        vec![matrix],
        format!("field-module M({}) in F_{q} (p={}, f={})", spec.m_order, spec.p, spec.f),
    )?;
    let mut m_elements = Vec::with_capacity(spec.m_order as usize);
    let mut x = FpPolynomial::one(field);
    for _ in 0..spec.m_order {
        m_elements.push(ext.index_of_element(&x));
        x = ext.mul_elements(&x, &m_gen);
    }
    m_elements.sort_unstable();
    Ok(FieldModule {
        group,
        ext,
        m_elements,
        additively_generating: !subgroup_lies_in_proper_subfield(spec.p, spec.f, spec.m_order),
    })
}

/// The Waring number of `M`: the least `n` with `n·(M ∪ {0}) = F_q`, i.e.
/// the diameter of the orbital graph with connection set `M`. Stagnation
/// (when `M` sits in a proper subfield) propagates as an error.
pub fn waring_number(module: &FieldModule) -> Result<u64> {
    let space = VectorSpace::new(module.ext.base(), module.ext.degree())?;
    let delta = ConnectionSet::new(&space, &module.m_elements)?;
    Ok(orbit_diameter_directed(&space, &delta)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_order, is_irreducible, scalar_intersection, GroupOrder};

    #[test]
    fn wreath_orders_and_irreducibility() {
        let spec = WreathSpec {
            p: 5,
            k_order: 4,
            top_generators: symmetric_top(2),
            d: 2,
        };
        assert_eq!(spec.expected_order(), 32);
        let g = build_wreath(&spec).unwrap();
        assert_eq!(group_order(&g, 10_000), GroupOrder::Exact(32));
        let space = g.space().unwrap();
        let orbits = orbits_on_points(&g, &space);
        assert!(is_irreducible(&g, &space, &orbits));

        let spec = WreathSpec {
            p: 3,
            k_order: 2,
            top_generators: cyclic_top(3),
            d: 3,
        };
        assert_eq!(spec.expected_order(), 24);
        let g = build_wreath(&spec).unwrap();
        assert_eq!(group_order(&g, 10_000), GroupOrder::Exact(24));
    }

    #[test]
    fn wreath_scalars_recover_k() {
        let spec = WreathSpec {
            p: 7,
            k_order: 3,
            top_generators: cyclic_top(2),
            d: 2,
        };
        let g = build_wreath(&spec).unwrap();
        let scalars = scalar_intersection(&g, 100_000).unwrap();
        assert_eq!(scalars.order(), 3);
        let f = PrimeField::new(7).unwrap();
        assert_eq!(scalars.elements(), f.subgroup_elements(3).unwrap().as_slice());
    }

    #[test]
    fn wreath_rejections() {
        let base = WreathSpec {
            p: 2,
            k_order: 1,
            top_generators: cyclic_top(2),
            d: 2,
        };
        assert!(build_wreath(&base).is_err()); // p = 2
        assert!(build_wreath(&WreathSpec { p: 5, k_order: 1, ..base.clone() }).is_err());
        assert!(build_wreath(&WreathSpec { p: 5, k_order: 3, ..base.clone() }).is_err()); // 3 does not divide 4
        // intransitive top group
        let bad = WreathSpec {
            p: 5,
            k_order: 2,
            top_generators: vec![vec![0, 1, 2]],
            d: 3,
        };
        assert!(build_wreath(&bad).is_err());
    }

    #[test]
    fn alt_module_small_cases() {
        let g = build_alt_module(&AltModuleSpec { r: 5, p: 7 }).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(group_order(&g, 10_000), GroupOrder::Exact(60));
        let space = g.space().unwrap();
        assert_eq!(space.size(), 2401);
        let orbits = orbits_on_points(&g, &space);
        assert!(is_irreducible(&g, &space, &orbits));

        // r = 6 needs the even-r generating pair
        let g6 = build_alt_module(&AltModuleSpec { r: 6, p: 5 }).unwrap();
        assert_eq!(g6.dim(), 5);
        assert_eq!(group_order(&g6, 10_000), GroupOrder::Exact(360));
        let space6 = g6.space().unwrap();
        let orbits6 = orbits_on_points(&g6, &space6);
        assert!(is_irreducible(&g6, &space6, &orbits6));
    }

    #[test]
    fn alt_module_rejections() {
        assert!(build_alt_module(&AltModuleSpec { r: 5, p: 5 }).is_err());
        assert!(build_alt_module(&AltModuleSpec { r: 4, p: 7 }).is_err());
        assert!(build_alt_module(&AltModuleSpec { r: 5, p: 2 }).is_err());
    }

    #[test]
    fn zsigmondy_cyclic_small_cases() {
        let g = build_zsigmondy_cyclic(&ZsigmondyCyclicSpec { d: 2, p: 5 }).unwrap();
        assert_eq!(group_order(&g, 1000), GroupOrder::Exact(6));
        let space = g.space().unwrap();
        let orbits = orbits_on_points(&g, &space);
        for id in orbits.nonzero_orbit_ids() {
            assert_eq!(orbits.sizes()[id as usize], 6);
        }

        let g = build_zsigmondy_cyclic(&ZsigmondyCyclicSpec { d: 4, p: 3 }).unwrap();
        assert_eq!(g.space().unwrap().size(), 81);
        assert_eq!(group_order(&g, 1000), GroupOrder::Exact(10));

        // ord(11 mod 5) = 1, rejected
        assert!(build_zsigmondy_cyclic(&ZsigmondyCyclicSpec { d: 4, p: 11 }).is_err());
    }

    #[test]
    fn zsigmondy_p_search() {
        let found = find_zsigmondy_p(4, 20).unwrap();
        assert_eq!(found, vec![3, 7, 13, 17]);
        assert!(found.contains(&3));
        assert!(!found.contains(&11));
        let found = find_zsigmondy_p(2, 20).unwrap();
        assert!(found.contains(&5));
        assert_eq!(found, vec![5, 11, 17]);
        assert!(find_zsigmondy_p(3, 20).is_err()); // 4 is not prime
    }

    #[test]
    fn zsigmondy_prime_search() {
        assert_eq!(find_zsigmondy_primes(2, 6).unwrap(), Vec::<u128>::new());
        assert_eq!(find_zsigmondy_primes(2, 4).unwrap(), vec![5]);
        assert_eq!(find_zsigmondy_primes(3, 3).unwrap(), vec![13]);
        assert_eq!(find_zsigmondy_primes(2, 11).unwrap(), vec![23, 89]);
        assert!(find_zsigmondy_primes(2, 2).is_err());
    }

    #[test]
    fn field_module_waring_numbers() {
        // p=7, f=1, |M|=3: M = {1, 2, 4}, two steps cover F_7
        let m = build_field_module(&FieldModuleSpec { p: 7, f: 1, m_order: 3 }).unwrap();
        assert_eq!(m.m_elements, vec![1, 2, 4]);
        assert!(m.additively_generating);
        assert_eq!(waring_number(&m).unwrap(), 2);

        // the full multiplicative group covers in one step
        let m = build_field_module(&FieldModuleSpec { p: 3, f: 2, m_order: 8 }).unwrap();
        assert!(m.additively_generating);
        assert_eq!(waring_number(&m).unwrap(), 1);

        // order 3 inside F_4 < F_16: stagnation
        let m = build_field_module(&FieldModuleSpec { p: 2, f: 4, m_order: 3 }).unwrap();
        assert!(!m.additively_generating);
        assert!(matches!(waring_number(&m), Err(Error::Stagnation { .. })));
    }

    #[test]
    fn field_module_rejections() {
        assert!(build_field_module(&FieldModuleSpec { p: 7, f: 1, m_order: 1 }).is_err());
        assert!(build_field_module(&FieldModuleSpec { p: 7, f: 1, m_order: 4 }).is_err());
    }

    #[test]
    fn waring_number_in_f64_with_order_nine_subgroup() {
        // frozen from the breadth-first oracle; the suite re-checks both
        // routes on this instance
        let m = build_field_module(&FieldModuleSpec { p: 2, f: 6, m_order: 9 }).unwrap();
        assert!(m.additively_generating);
        assert_eq!(waring_number(&m).unwrap(), 3);
    }

    #[test]
    fn waring_number_of_plus_minus_one_is_half_the_field() {
        // M = {1, -1}: sums of at most n signs reach [-n, n], so covering
        // F_p needs (p-1)/2 steps
        for p in [11u64, 101, 1999] {
            let m = build_field_module(&FieldModuleSpec { p, f: 1, m_order: 2 }).unwrap();
            assert_eq!(waring_number(&m).unwrap(), (p - 1) / 2);
        }
    }
}
