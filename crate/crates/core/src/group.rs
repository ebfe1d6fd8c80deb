//! Matrix groups given by generators: orbits on the point space, closure
//! enumeration, irreducibility, scalar intersection and normality.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::field::{order_given_group_exponent, PrimeField};
use crate::linalg::spin_closure;
use crate::matrix::FpMatrix;
use crate::space::VectorSpace;

/// Default cap on group-element enumeration.
pub const DEFAULT_MAX_GROUP: u64 = 1_000_000;

/// A subgroup of `GL(d, p)` given by a nonempty list of invertible generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    field: PrimeField,
    dim: usize,
    generators: Vec<FpMatrix>,
    name: String,
}

impl GroupSpec {
    pub fn new(
        field: PrimeField,
        dim: usize,
        generators: Vec<FpMatrix>,
        name: impl Into<String>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::invalid("a group needs at least one generator"));
        }
        for g in &generators {
            if g.dim() != dim || g.field() != field {
                return Err(Error::invalid("generator dimensions are inconsistent"));
            }
            if !g.is_invertible() {
                return Err(Error::invalid(format!(
                    "generator is singular:\n{g}"
                )));
            }
        }
        Ok(GroupSpec {
            field,
            dim,
            generators,
            name: name.into(),
        })
    }

    /// The trivial group `{I} <= GL(d, p)`.
    pub fn trivial(field: PrimeField, dim: usize, name: impl Into<String>) -> Self {
        GroupSpec::new(field, dim, vec![FpMatrix::identity(field, dim)], name).unwrap()
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The group with `-I` adjoined to the generators.
    pub fn with_minus_one(&self) -> GroupSpec {
        if self.p() == 2 {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        let neg = FpMatrix::neg_identity(self.field, self.dim);
        if !gens.contains(&neg) {
            gens.push(neg);
        }
        GroupSpec {
            field: self.field,
            dim: self.dim,
            generators: gens,
            name: format!("{}<-1>", self.name),
        }
    }

    pub fn space(&self) -> Result<VectorSpace> {
        VectorSpace::new(self.field, self.dim)
    }

    pub fn space_with_cap(&self, max_points: u64) -> Result<VectorSpace> {
        VectorSpace::with_cap(self.field, self.dim, max_points)
    }
}

/// The partition of the point space into group orbits. Orbit ids are assigned
/// in order of least representative, so the zero orbit always has id 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    orbit_id: Vec<u32>,
    reps: Vec<u64>,
    sizes: Vec<u64>,
}

impl OrbitPartition {
    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    #[inline]
    pub fn orbit_of(&self, index: u64) -> u32 {
        self.orbit_id[index as usize]
    }

    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Ids of the orbits other than `{0}`. Generators are linear, so the
    /// zero orbit is the singleton with id 0.
    pub fn nonzero_orbit_ids(&self) -> impl Iterator<Item = u32> {
        1..self.reps.len() as u32
    }

    /// Elements of every orbit, grouped by orbit id in index order.
    pub fn elements_by_orbit(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new(); self.reps.len()];
        for (idx, &id) in self.orbit_id.iter().enumerate() {
            out[id as usize].push(idx as u64);
        }
        for (bucket, &size) in out.iter_mut().zip(&self.sizes) {
            debug_assert_eq!(bucket.len() as u64, size);
        }
        out
    }

    /// Size of the smallest nonzero orbit.
    pub fn smallest_nonzero_orbit(&self) -> Option<u64> {
        self.nonzero_orbit_ids()
            .map(|id| self.sizes[id as usize])
            .min()
    }
}

/// Exact orbit partition by breadth-first closure of each point under the
/// generators.
pub fn orbits_on_points(group: &GroupSpec, space: &VectorSpace) -> OrbitPartition {
    let size = space.size() as usize;
    const UNSEEN: u32 = u32::MAX;
    let mut orbit_id = vec![UNSEEN; size];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..size as u64 {
        if orbit_id[start as usize] != UNSEEN {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(start);
        orbit_id[start as usize] = id;
        let mut count = 1u64;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for g in &group.generators {
                let w = g.apply_point(space, v);
                if orbit_id[w as usize] == UNSEEN {
                    orbit_id[w as usize] = id;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(count);
    }
    OrbitPartition {
        orbit_id,
        reps,
        sizes,
    }
}

/// Result of a capped group-order computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Exact(u64),
    /// Enumeration hit the cap; the true order is at least this.
    AtLeast(u64),
}

impl GroupOrder {
    pub fn exact(&self) -> Option<u64> {
        match self {
            GroupOrder::Exact(n) => Some(*n),
            GroupOrder::AtLeast(_) => None,
        }
    }
}

/// `|<generators>|` by breadth-first closure, stopping at the cap.
pub fn group_order(group: &GroupSpec, cap: u64) -> GroupOrder {
    match enumerate_elements(group, cap) {
        Ok(elems) => GroupOrder::Exact(elems.len() as u64),
        Err(_) => GroupOrder::AtLeast(cap),
    }
}

/// All elements of the group, by breadth-first closure on matrices.
pub fn enumerate_elements(group: &GroupSpec, cap: u64) -> Result<Vec<FpMatrix>> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let identity = FpMatrix::identity(group.field, group.dim);
    seen.insert(identity.entries().to_vec());
    let mut elems = vec![identity];
    let mut frontier = 0;
    while frontier < elems.len() {
        let current = elems[frontier].clone();
        frontier += 1;
        for g in &group.generators {
            let next = current.mat_mul(g);
            if seen.insert(next.entries().to_vec()) {
                if elems.len() as u64 >= cap {
                    return Err(Error::CapExceeded {
                        what: "group element enumeration",
                        cap,
                        reached: elems.len() as u64,
                    });
                }
                elems.push(next);
            }
        }
    }
    Ok(elems)
}

/// True iff the module is irreducible: the spin of one representative per
/// nonzero orbit must fill the space (spin dimension is constant on orbits,
/// and a proper invariant subspace contains the spin of any of its nonzero
/// vectors).
pub fn is_irreducible(group: &GroupSpec, space: &VectorSpace, orbits: &OrbitPartition) -> bool {
    for id in orbits.nonzero_orbit_ids() {
        let rep = orbits.reps()[id as usize];
        let coords = space.decode(rep);
        let spin = spin_closure(group.field, group.dim, &[coords], &group.generators);
        if !spin.is_full() {
            return false;
        }
    }
    true
}

/// The cyclic subgroup `F_p^x ∩ H` of scalar matrices in the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSubgroup {
    order: u64,
    /// sorted residues
    elements: Vec<u64>,
    generator: u64,
}

impl ScalarSubgroup {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// `F_p^x ∩ H` from full element enumeration. A cap overflow is reported as
/// an error, never guessed around.
pub fn scalar_intersection(group: &GroupSpec, cap: u64) -> Result<ScalarSubgroup> {
    let elems = enumerate_elements(group, cap)?;
    let field = group.field;
    let mut scalars: Vec<u64> = elems.iter().filter_map(|m| m.as_scalar()).collect();
    scalars.sort_unstable();
    scalars.dedup();
    let order = scalars.len() as u64;
    let generator = scalars
        .iter()
        .copied()
        .find(|&s| field.element_order(s).unwrap() == order)
        .expect("a finite subgroup of F_p^x is cyclic");
    Ok(ScalarSubgroup {
        order,
        elements: scalars,
        generator,
    })
}

/// True iff `A` is normalized by every generator of `H`: each conjugate
/// `h^-1 a h` of each `A`-generator lies in the enumerated `A`.
pub fn is_normal_in(subgroup: &GroupSpec, group: &GroupSpec, cap: u64) -> Result<bool> {
    if subgroup.dim() != group.dim() || subgroup.field() != group.field() {
        return Err(Error::invalid("subgroup and group act on different spaces"));
    }
    let elems = enumerate_elements(subgroup, cap)?;
    let members: HashSet<&[u64]> = elems.iter().map(|m| m.entries()).collect();
    for h in group.generators() {
        let h_inv = h.inverse()?;
        for a in subgroup.generators() {
            let conj = h_inv.mat_mul(a).mat_mul(h);
            if !members.contains(conj.entries()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Order of one element inside a group of known order.
pub fn element_order_in(group_order: u64, m: &FpMatrix) -> u64 {
    order_given_group_exponent(group_order, |e| {
        if m.pow(e).is_identity() {
            1
        } else {
            0
        }
    })
}

/// Searches the enumerated elements for one whose order equals the group
/// order, i.e. a witness that the group is cyclic.
pub fn cyclic_generator(elements: &[FpMatrix]) -> Option<&FpMatrix> {
    let n = elements.len() as u64;
    elements
        .iter()
        .find(|m| element_order_in(n, m) == n)
}

/// Headline facts about a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFacts {
    pub order: GroupOrder,
    pub irreducible: bool,
    /// `None` when the enumeration cap was exceeded.
    pub scalar_subgroup: Option<ScalarSubgroup>,
    /// `None` when unknown for the same reason.
    pub contains_minus_one: Option<bool>,
}

pub fn compute_facts(
    group: &GroupSpec,
    space: &VectorSpace,
    orbits: &OrbitPartition,
    group_cap: u64,
) -> GroupFacts {
    let order = group_order(group, group_cap);
    let irreducible = is_irreducible(group, space, orbits);
    let scalar_subgroup = scalar_intersection(group, group_cap).ok();
    let contains_minus_one = if group.p() == 2 {
        Some(true)
    } else {
        scalar_subgroup
            .as_ref()
            .map(|s| s.contains(group.field.neg(1)))
    };
    GroupFacts {
        order,
        irreducible,
        scalar_subgroup,
        contains_minus_one,
    }
}

/// Orders of all elements, as a multiset histogram. Exposed for tests and
/// reports on small groups.
pub fn order_histogram(elements: &[FpMatrix]) -> HashMap<u64, usize> {
    let n = elements.len() as u64;
    let mut hist = HashMap::new();
    for m in elements {
        *hist.entry(element_order_in(n, m)).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn scalar_group(p: u64, c: u64) -> GroupSpec {
        let f = fp(p);
        GroupSpec::new(f, 1, vec![FpMatrix::from_rows(f, &[vec![c]]).unwrap()], "scalar").unwrap()
    }

    #[test]
    fn trivial_group_orbits_are_singletons() {
        let g = GroupSpec::trivial(fp(3), 1, "trivial");
        let space = g.space().unwrap();
        let orbits = orbits_on_points(&g, &space);
        assert_eq!(orbits.orbit_count(), 3);
        assert_eq!(orbits.sizes(), &[1, 1, 1]);
        assert_eq!(orbits.reps(), &[0, 1, 2]);
    }

    #[test]
    fn negation_orbits_on_f5() {
        let g = scalar_group(5, 4);
        let space = g.space().unwrap();
        let orbits = orbits_on_points(&g, &space);
        assert_eq!(orbits.orbit_count(), 3);
        let by_orbit = orbits.elements_by_orbit();
        assert_eq!(by_orbit[0], vec![0]);
        assert_eq!(by_orbit[1], vec![1, 4]);
        assert_eq!(by_orbit[2], vec![2, 3]);
    }

    #[test]
    fn powers_of_two_orbits_on_f7() {
        let g = scalar_group(7, 2);
        let space = g.space().unwrap();
        let orbits = orbits_on_points(&g, &space);
        let by_orbit = orbits.elements_by_orbit();
        assert_eq!(by_orbit[1], vec![1, 2, 4]);
        assert_eq!(by_orbit[2], vec![3, 5, 6]);
        assert_eq!(orbits.smallest_nonzero_orbit(), Some(3));
    }

    #[test]
    fn orbit_sizes_divide_group_order() {
        let f = fp(5);
        let gens = vec![
            FpMatrix::from_rows(f, &[vec![4, 0], vec![0, 1]]).unwrap(),
            FpMatrix::permutation(f, &[1, 0]).unwrap(),
        ];
        let g = GroupSpec::new(f, 2, gens, "<-1 in slot 0> wr Sym(2)").unwrap();
        let order = group_order(&g, 1000).exact().unwrap();
        assert_eq!(order, 8);
        let space = g.space().unwrap();
        let orbits = orbits_on_points(&g, &space);
        let total: u64 = orbits.sizes().iter().sum();
        assert_eq!(total, space.size());
        for &s in orbits.sizes() {
            assert_eq!(order % s, 0);
        }
        assert_eq!(orbits.sizes()[0], 1);
    }

    #[test]
    fn order_of_minus_one_group() {
        for p in [3, 5, 17] {
            let f = fp(p);
            let g = GroupSpec::new(f, 2, vec![FpMatrix::neg_identity(f, 2)], "<-I>").unwrap();
            assert_eq!(group_order(&g, 100), GroupOrder::Exact(2));
        }
    }

    #[test]
    fn alt5_permutation_matrices_order_60() {
        let f = fp(2);
        // (0 1 2) and (0 1 2 3 4) generate Alt(5)
        let a = FpMatrix::permutation(f, &[1, 2, 0, 3, 4]).unwrap();
        let b = FpMatrix::permutation(f, &[1, 2, 3, 4, 0]).unwrap();
        let g = GroupSpec::new(f, 5, vec![a, b], "Alt(5) natural").unwrap();
        assert_eq!(group_order(&g, 10_000), GroupOrder::Exact(60));
    }

    #[test]
    fn enumeration_cap_reports_at_least() {
        let g = scalar_group(17, 3); // order 16
        assert_eq!(group_order(&g, 5), GroupOrder::AtLeast(5));
        assert!(enumerate_elements(&g, 5).is_err());
        assert_eq!(group_order(&g, 16), GroupOrder::Exact(16));
    }

    #[test]
    fn irreducibility_examples() {
        // any nontrivial subgroup of F_p^x in dimension 1
        let g = scalar_group(7, 2);
        let space = g.space().unwrap();
        let orbits = orbits_on_points(&g, &space);
        assert!(is_irreducible(&g, &space, &orbits));

        // diag(2,1) fixes the coordinate axes
        let f = fp(5);
        let d = GroupSpec::new(
            f,
            2,
            vec![FpMatrix::from_rows(f, &[vec![2, 0], vec![0, 1]]).unwrap()],
            "diag(2,1)",
        )
        .unwrap();
        let space = d.space().unwrap();
        let orbits = orbits_on_points(&d, &space);
        assert!(!is_irreducible(&d, &space, &orbits));
    }

    #[test]
    fn scalar_intersection_examples() {
        let f = fp(5);
        // <-I> in dimension 2
        let g = GroupSpec::new(f, 2, vec![FpMatrix::neg_identity(f, 2)], "<-I>").unwrap();
        let s = scalar_intersection(&g, 100).unwrap();
        assert_eq!(s.elements(), &[1, 4]);
        assert_eq!(s.order(), 2);
        assert!(s.contains(4));

        // permutation matrices have trivial scalar intersection
        let perm = GroupSpec::new(f, 2, vec![FpMatrix::permutation(f, &[1, 0]).unwrap()], "Sym(2)")
            .unwrap();
        let s = scalar_intersection(&perm, 100).unwrap();
        assert!(s.is_trivial());

        // cap exceeded is an explicit failure
        let big = scalar_group(17, 3);
        assert!(scalar_intersection(&big, 5).is_err());
    }

    #[test]
    fn normality_examples() {
        let f = fp(5);
        let diag_g = FpMatrix::from_rows(f, &[vec![2, 0], vec![0, 1]]).unwrap();
        let swap = FpMatrix::permutation(f, &[1, 0]).unwrap();
        let wreath = GroupSpec::new(f, 2, vec![diag_g.clone(), swap], "F5x wr Sym(2)").unwrap();

        // scalars are central, hence normal
        let scalars = GroupSpec::new(f, 2, vec![FpMatrix::scalar(f, 2, 2)], "scalars").unwrap();
        assert!(is_normal_in(&scalars, &wreath, 1000).unwrap());

        // the one-slot diagonal subgroup is moved by the swap
        let slot = GroupSpec::new(f, 2, vec![diag_g], "diag(g,1)").unwrap();
        assert!(!is_normal_in(&slot, &wreath, 1000).unwrap());

        // every group is normal in itself
        assert!(is_normal_in(&wreath, &wreath, 1000).unwrap());
    }

    #[test]
    fn facts_tie_scalars_to_minus_one() {
        let f = fp(5);
        let g = GroupSpec::new(f, 2, vec![FpMatrix::neg_identity(f, 2)], "<-I>").unwrap();
        let space = g.space().unwrap();
        let orbits = orbits_on_points(&g, &space);
        let facts = compute_facts(&g, &space, &orbits, 1000);
        assert_eq!(facts.order, GroupOrder::Exact(2));
        assert_eq!(facts.contains_minus_one, Some(true));
        assert!(!facts.irreducible); // every line is invariant

        let h = g.with_minus_one();
        assert_eq!(h.generators().len(), 1); // -I already present
    }

    #[test]
    fn cyclic_generator_found_for_cyclic_groups() {
        let f = fp(7);
        let g = scalar_group(7, 3); // order 6 cyclic
        let elems = enumerate_elements(&g, 100).unwrap();
        assert_eq!(elems.len(), 6);
        let gen = cyclic_generator(&elems).unwrap();
        assert_eq!(element_order_in(6, gen), 6);

        // Sym(2) x <-1> on the diagonal is a Klein four group: not cyclic
        let a = FpMatrix::permutation(f, &[1, 0]).unwrap();
        let b = FpMatrix::neg_identity(f, 2);
        let klein = GroupSpec::new(f, 2, vec![a, b], "klein").unwrap();
        let elems = enumerate_elements(&klein, 100).unwrap();
        assert_eq!(elems.len(), 4);
        assert!(cyclic_generator(&elems).is_none());
    }
}
