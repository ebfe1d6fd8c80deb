//! Decomposition of `V` into irreducible summands under an abelian p'-group
//! `A`, by spin-shrinking to a minimal submodule and splitting off an
//! averaged-projection complement. The summand count `k` drives the explicit
//! diameter bounds.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::{cyclic_generator, enumerate_elements, GroupSpec};
use crate::linalg::{intersection, spin_closure, Subspace};
use crate::matrix::FpMatrix;

#[derive(Debug, Clone)]
pub struct SummandDecomposition {
    /// Basis of each irreducible summand, in ambient coordinates.
    pub summands: Vec<Vec<Vec<u64>>>,
    /// Number of summands.
    pub k: usize,
    pub a_order: u64,
}

/// An `A`-invariant complement of `U` in `W`, computed as the kernel of the
/// averaged projection `|A|^-1 sum_a a pi0 a^-1` where `pi0` is any linear
/// projection onto `U`. Requires `gcd(|A|, p) = 1`.
pub fn maschke_complement(
    w: &Subspace,
    u: &Subspace,
    a_elements: &[FpMatrix],
) -> Result<Subspace> {
    let field = w.field();
    let p = field.modulus();
    let n = w.ambient_dim();
    if !w.contains_subspace(u) {
        return Err(Error::invalid("U is not contained in W"));
    }
    let a_order = a_elements.len() as u64;
    if a_order % p == 0 {
        return Err(Error::invalid(format!(
            "|A| = {a_order} is divisible by p = {p}"
        )));
    }
    if u.dim() == w.dim() {
        return Ok(Subspace::empty(field, n));
    }

    // pi0 = P D P^-1 with the columns of P a basis of V extending U, and D
    // the coordinate projection onto the U block
    let mut extension = Subspace::from_vectors(field, n, u.basis());
    let mut columns: Vec<Vec<u64>> = u.basis().to_vec();
    for v in w.basis() {
        if extension.insert(v) {
            columns.push(v.clone());
        }
    }
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        if extension.insert(&e) {
            columns.push(e);
        }
    }
    let mut p_mat = FpMatrix::identity(field, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, &c) in col.iter().enumerate() {
            p_mat.set(i, j, c);
        }
    }
    let p_inv = p_mat.inverse()?;
    let mut diag = FpMatrix::scalar(field, n, 0);
    for i in 0..u.dim() {
        diag.set(i, i, 1);
    }
    let pi0 = p_mat.mat_mul(&diag).mat_mul(&p_inv);

    // average over the group
    let mut sum = FpMatrix::scalar(field, n, 0);
    for a in a_elements {
        let a_inv = a.inverse()?;
        let term = a.mat_mul(&pi0).mat_mul(&a_inv);
        for i in 0..n {
            for j in 0..n {
                sum.set(i, j, field.add(sum.get(i, j), term.get(i, j)));
            }
        }
    }
    let scale = field.inv(a_order % p)?;
    let mut avg = FpMatrix::scalar(field, n, 0);
    for i in 0..n {
        for j in 0..n {
            avg.set(i, j, field.mul(scale, sum.get(i, j)));
        }
    }

    let kernel = Subspace::from_vectors(field, n, &avg.kernel());
    let complement = intersection(&kernel, w);

    // U + C = W with trivial intersection
    let mut direct = Subspace::from_vectors(field, n, u.basis());
    for v in complement.basis() {
        if !direct.insert(v) {
            return Err(Error::CrossCheck(
                "Maschke complement intersects U".into(),
            ));
        }
    }
    if direct.dim() != w.dim() {
        return Err(Error::CrossCheck(
            "Maschke complement does not fill W".into(),
        ));
    }
    Ok(complement)
}

fn is_invariant(sub: &Subspace, gens: &[FpMatrix]) -> bool {
    sub.basis()
        .iter()
        .all(|v| gens.iter().all(|g| sub.contains(&g.apply_coords_unchecked(v))))
}

/// Shrinks to an `A`-irreducible submodule of `W`: spin the first nonzero
/// vector, then re-spin from any orbit representative whose spin is proper,
/// until every representative spins to the whole block.
fn minimal_submodule(w: &Subspace, gens: &[FpMatrix]) -> Subspace {
    let field = w.field();
    let n = w.ambient_dim();
    let mut block = spin_closure(field, n, &w.basis()[..1], gens);
    'shrink: loop {
        if block.dim() == 1 {
            return block;
        }
        let points = block.point_count();
        let mut visited = vec![false; points as usize];
        visited[0] = true;
        for code in 1..points {
            if visited[code as usize] {
                continue;
            }
            // mark the A-orbit of this representative
            let rep = block.point_by_code(code);
            let mut stack = vec![rep.clone()];
            visited[code as usize] = true;
            while let Some(v) = stack.pop() {
                for g in gens {
                    let img = g.apply_coords_unchecked(&v);
                    let icode = block.code_of_point(&img) as usize;
                    if !visited[icode] {
                        visited[icode] = true;
                        stack.push(img);
                    }
                }
            }
            let spin = spin_closure(field, n, &[rep], gens);
            if spin.dim() < block.dim() {
                block = spin;
                continue 'shrink;
            }
        }
        return block;
    }
}

/// Full decomposition of the point space under `A`, with `k` the number of
/// irreducible summands. For cyclic `A = <a>` the count is cross-checked via
/// the distinct-degree factor products `m_e` of the minimal polynomial of
/// `a`: `k = sum_e dim ker m_e(a) / e`; disagreement is a hard error.
pub fn summand_count(a: &GroupSpec, cap: u64) -> Result<SummandDecomposition> {
    let field = a.field();
    let p = field.modulus();
    let dim = a.dim();

    for (i, g) in a.generators().iter().enumerate() {
        for h in &a.generators()[i + 1..] {
            if g.mat_mul(h) != h.mat_mul(g) {
                return Err(Error::invalid("generators of A do not commute"));
            }
        }
    }
    let elements = enumerate_elements(a, cap)?;
    let a_order = elements.len() as u64;
    if a_order == 1 {
        return Err(Error::invalid("A is trivial"));
    }
    if a_order % p == 0 {
        return Err(Error::invalid(format!(
            "|A| = {a_order} is divisible by p = {p}"
        )));
    }

    let mut summands = Vec::new();
    let mut current = Subspace::full(field, dim);
    while current.dim() > 0 {
        let block = minimal_submodule(&current, a.generators());
        if !is_invariant(&block, a.generators()) {
            return Err(Error::CrossCheck("summand is not A-invariant".into()));
        }
        let rest = maschke_complement(&current, &block, &elements)?;
        summands.push(block.basis().to_vec());
        current = rest;
    }
    let k = summands.len();
    debug_assert_eq!(summands.iter().map(|s| s.len()).sum::<usize>(), dim);

    if let Some(gen) = cyclic_generator(&elements) {
        let min_poly = gen.min_poly();
        let products = min_poly.distinct_degree_factor_products()?;
        let mut k_ddf = 0usize;
        for (e, m_e) in &products {
            let kernel_dim = gen.poly_eval(m_e).kernel().len();
            if kernel_dim % e != 0 {
                return Err(Error::CrossCheck(format!(
                    "kernel of m_{e}(a) has dimension {kernel_dim}, not a multiple of {e}"
                )));
            }
            k_ddf += kernel_dim / e;
        }
        if k_ddf != k {
            return Err(Error::CrossCheck(format!(
                "cyclic summand count {k_ddf} (distinct-degree route) disagrees with {k} (Maschke route)"
            )));
        }
    }

    Ok(SummandDecomposition {
        summands,
        k,
        a_order,
    })
}

/// Verifies that each summand is `A`-irreducible by the representative-spin
/// test; exposed so reports and tests can re-check a decomposition.
pub fn verify_irreducible_summands(
    field: PrimeField,
    decomposition: &SummandDecomposition,
    gens: &[FpMatrix],
) -> bool {
    for basis in &decomposition.summands {
        let n = basis[0].len();
        let block = Subspace::from_vectors(field, n, basis);
        let shrunk = minimal_submodule(&block, gens);
        if shrunk.dim() != block.dim() {
            return false;
        }
    }
    true
}
