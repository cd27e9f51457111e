//! The twist functor at the module level: free Z-modules with a right
//! G-action, finite torsion modules with a left G-action, their tensor
//! twists, Frobenius fixed points, induced maps, cokernels of group-ring
//! presentations, exactness and associativity checks.
//!
//! The twisting element gamma acts on a twisted module I (x) M by
//! (inverse on I) (x) (action on M); the inverse is taken of the action
//! matrix over Z, never of the group element downstream.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclopoly::IntPoly;
use crate::exactlinalg::{
    index_in, inverse_unimodular, lattice_from_rows, right_kernel, snf_diagonal,
    snf_with_row_transform, Index, IntMatrix, Lattice,
};
use crate::grouprings::{FiniteGroup, GroupRingElement};
use crate::{Error, Result};

/// A free Z-module of finite rank with a right G-action by unimodular
/// integer matrices acting on row vectors: action(gh) = action(g) action(h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisLattice {
    group: FiniteGroup,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl GaloisLattice {
    pub fn new(group: FiniteGroup, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Precondition(
                "need one action matrix per group element".into(),
            ));
        }
        for a in &action {
            if a.rows() != rank || a.cols() != rank {
                return Err(Error::Precondition("action matrix has wrong shape".into()));
            }
            if inverse_unimodular(a).is_none() {
                return Err(Error::Precondition(
                    "action matrix not invertible over Z".into(),
                ));
            }
        }
        if action[group.identity()] != IntMatrix::identity(rank) {
            return Err(Error::Precondition("identity must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if action[g].mul(&action[h]) != action[group.mul(g, h)] {
                    return Err(Error::Precondition(format!(
                        "action is not a homomorphism at ({g},{h})"
                    )));
                }
            }
        }
        Ok(GaloisLattice {
            group,
            rank,
            action,
        })
    }

    /// Internal constructor for actions that are homomorphisms by
    /// construction.
    pub(crate) fn new_trusted(group: FiniteGroup, rank: usize, action: Vec<IntMatrix>) -> Self {
        debug_assert_eq!(action.len(), group.order());
        GaloisLattice {
            group,
            rank,
            action,
        }
    }

    pub fn trivial(group: &FiniteGroup, rank: usize) -> Self {
        let action = vec![IntMatrix::identity(rank); group.order()];
        GaloisLattice::new_trusted(group.clone(), rank, action)
    }

    /// Z[G]^copies with the right regular action in the group-element basis.
    pub fn free_module(group: &FiniteGroup, copies: usize) -> Self {
        let n = group.order();
        let rank = n * copies;
        let mut action = Vec::with_capacity(n);
        for g in 0..n {
            let mut m = IntMatrix::zeros(rank, rank);
            for c in 0..copies {
                for k in 0..n {
                    m.set(c * n + k, c * n + group.mul(k, g), BigInt::one());
                }
            }
            action.push(m);
        }
        GaloisLattice::new_trusted(group.clone(), rank, action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    /// action(g)^-1, inverted as an integer matrix.
    pub fn action_inverse(&self, g: usize) -> IntMatrix {
        inverse_unimodular(&self.action[g]).expect("unimodular by construction")
    }

    /// Plain tensor product with the diagonal action, index (i,j) = i * other.rank + j.
    pub fn tensor(&self, other: &GaloisLattice) -> Result<GaloisLattice> {
        if self.group != other.group {
            return Err(Error::Precondition("tensor: group mismatch".into()));
        }
        let action = (0..self.group.order())
            .map(|g| self.action[g].kron(&other.action[g]))
            .collect();
        Ok(GaloisLattice::new_trusted(
            self.group.clone(),
            self.rank * other.rank,
            action,
        ))
    }
}

fn bigint_mod(x: &BigInt, n: &BigInt) -> BigInt {
    if n.is_zero() {
        return x.clone();
    }
    let r = x % n;
    if r.is_negative() {
        r + n.abs()
    } else {
        r
    }
}

fn reduce_entries(m: &IntMatrix, row_moduli: &[BigInt]) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, bigint_mod(m.at(i, j), &row_moduli[i]));
        }
    }
    out
}

/// A finite abelian group (+) Z/n_i with a left G-action by matrices acting
/// on column vectors; entry (i,j) is read modulo n_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionGaloisModule {
    group: FiniteGroup,
    moduli: Vec<BigInt>,
    action: Vec<IntMatrix>,
}

impl TorsionGaloisModule {
    pub fn new(group: FiniteGroup, moduli: Vec<BigInt>, action: Vec<IntMatrix>) -> Result<Self> {
        if moduli.iter().any(|n| !n.is_positive()) {
            return Err(Error::Precondition("cyclic orders must be positive".into()));
        }
        if action.len() != group.order() {
            return Err(Error::Precondition(
                "need one action matrix per group element".into(),
            ));
        }
        let m = moduli.len();
        for a in &action {
            if a.rows() != m || a.cols() != m {
                return Err(Error::Precondition("action matrix has wrong shape".into()));
            }
            // well-defined: a[i][j] * n_j = 0 mod n_i
            for i in 0..m {
                for j in 0..m {
                    if !bigint_mod(&(a.at(i, j) * &moduli[j]), &moduli[i]).is_zero() {
                        return Err(Error::Precondition(
                            "action matrix does not respect the cyclic orders".into(),
                        ));
                    }
                }
            }
        }
        let action: Vec<IntMatrix> = action.iter().map(|a| reduce_entries(a, &moduli)).collect();
        if action[group.identity()] != reduce_entries(&IntMatrix::identity(m), &moduli) {
            return Err(Error::Precondition("identity must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let prod = reduce_entries(&action[g].mul(&action[h]), &moduli);
                if prod != action[group.mul(g, h)] {
                    return Err(Error::Precondition(format!(
                        "action is not a homomorphism at ({g},{h})"
                    )));
                }
            }
        }
        let module = TorsionGaloisModule {
            group,
            moduli,
            action,
        };
        // invertibility mod the orders: each generator must act bijectively
        for g in 0..module.group.order() {
            let (k, _) =
                module_map_kernel(&module.action[g], &module.moduli, &module.moduli)?;
            if !k.is_one() {
                return Err(Error::Precondition(format!(
                    "element {g} does not act invertibly"
                )));
            }
        }
        Ok(module)
    }

    pub(crate) fn new_trusted(
        group: FiniteGroup,
        moduli: Vec<BigInt>,
        action: Vec<IntMatrix>,
    ) -> Self {
        let action = action.iter().map(|a| reduce_entries(a, &moduli)).collect();
        TorsionGaloisModule {
            group,
            moduli,
            action,
        }
    }

    pub fn trivial(group: &FiniteGroup, moduli: Vec<BigInt>) -> Result<Self> {
        let m = moduli.len();
        let action = vec![IntMatrix::identity(m); group.order()];
        Self::new(group.clone(), moduli, action)
    }

    /// Z/n with a generator of a cyclic group acting by multiplication by q.
    pub fn cyclic_scalar(group: &FiniteGroup, n: u64, q: u64) -> Result<Self> {
        let gen = group.tau();
        let mut action = vec![IntMatrix::zeros(1, 1); group.order()];
        for e in 0..group.order() {
            let g = group.pow(gen, e);
            let mut m = IntMatrix::zeros(1, 1);
            m.set(0, 0, BigInt::from(q).modpow(&BigInt::from(e as u64), &BigInt::from(n)));
            action[g] = m;
        }
        Self::new(group.clone(), vec![BigInt::from(n)], action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cyclic_orders(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn order(&self) -> BigInt {
        self.moduli.iter().product()
    }

    /// Invariant factors of the underlying abelian group, 1s dropped,
    /// each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let m = self.moduli.len();
        let mut d = IntMatrix::zeros(m, m);
        for i in 0..m {
            d.set(i, i, self.moduli[i].clone());
        }
        snf_diagonal(&d)
            .into_iter()
            .filter(|s| !s.is_one())
            .collect()
    }
}

/// The preimage lattice { x : t x lies in diag(tgt) Z^b }: the kernel of the
/// induced map on the finite modules, before quotienting by the source
/// relations (which it always contains).
pub fn module_map_kernel_lattice(
    t: &IntMatrix,
    src_moduli: &[BigInt],
    tgt_moduli: &[BigInt],
) -> Lattice {
    let a = src_moduli.len();
    let b = tgt_moduli.len();
    assert_eq!(t.rows(), b);
    assert_eq!(t.cols(), a);
    let mut dt = IntMatrix::zeros(b, b);
    for i in 0..b {
        dt.set(i, i, -tgt_moduli[i].clone());
    }
    let ker = right_kernel(&t.hstack(&dt));
    let mut rows: Vec<Vec<BigInt>> = (0..ker.rank())
        .map(|r| ker.basis().row(r)[..a].to_vec())
        .collect();
    for (j, n) in src_moduli.iter().enumerate() {
        let mut row = vec![BigInt::zero(); a];
        row[j] = n.clone();
        rows.push(row);
    }
    lattice_from_rows(a, rows)
}

/// Kernel size and kernel invariant factors of the map given by `t` from
/// (+) Z/src_moduli to (+) Z/tgt_moduli (columns index the source).
pub fn module_map_kernel(
    t: &IntMatrix,
    src_moduli: &[BigInt],
    tgt_moduli: &[BigInt],
) -> Result<(BigInt, Vec<BigInt>)> {
    let a = src_moduli.len();
    assert_eq!(t.cols(), a);
    if a == 0 {
        return Ok((BigInt::one(), Vec::new()));
    }
    let k = module_map_kernel_lattice(t, src_moduli, tgt_moduli);
    let mut src_rows = Vec::new();
    for (j, n) in src_moduli.iter().enumerate() {
        let mut row = vec![BigInt::zero(); a];
        row[j] = n.clone();
        src_rows.push(row);
    }
    let src = lattice_from_rows(a, src_rows);
    // kernel = K / diag(src) Z^a; relative invariant factors from coordinates
    let mut coord_rows = Vec::new();
    for r in 0..src.rank() {
        let coords = k
            .coords_of(src.basis().row(r))
            .ok_or_else(|| Error::Precondition("map does not respect the moduli".into()))?;
        coord_rows.push(coords);
    }
    let factors: Vec<BigInt> = snf_diagonal(&IntMatrix::from_rows(coord_rows))
        .into_iter()
        .filter(|s| !s.is_one())
        .collect();
    let count = factors.iter().product();
    match index_in(&src, &k)? {
        Index::Finite(ix) => debug_assert_eq!(ix, count),
        Index::Infinite => {
            return Err(Error::Precondition("kernel not finite".into()));
        }
    }
    Ok((count, factors))
}

/// The twist I (x) M: rank(I) * m cyclic factors indexed (b, i) = b*m + i,
/// with gamma acting by (inverse of gamma's action on I, transposed) (x)
/// (gamma's action on M).
pub fn twist_module(i: &GaloisLattice, m: &TorsionGaloisModule) -> Result<TorsionGaloisModule> {
    if i.group() != m.group() {
        return Err(Error::Precondition("twist_module: group mismatch".into()));
    }
    let group = i.group().clone();
    let mut moduli = Vec::with_capacity(i.rank() * m.moduli.len());
    for _ in 0..i.rank() {
        moduli.extend(m.moduli.iter().cloned());
    }
    let action = (0..group.order())
        .map(|g| i.action_inverse(g).transpose().kron(m.action(g)))
        .collect();
    Ok(TorsionGaloisModule::new_trusted(group, moduli, action))
}

/// Fixed points of a single group element on a finite module.
pub struct FixedPoints {
    pub count: BigInt,
    /// Invariant factors of the fixed submodule, 1s dropped.
    pub invariant_factors: Vec<BigInt>,
}

pub fn fixed_points(m: &TorsionGaloisModule, gamma: usize) -> Result<FixedPoints> {
    let k = m.moduli.len();
    let diff = m.action(gamma).add(&IntMatrix::identity(k).neg());
    let (count, invariant_factors) = module_map_kernel(&diff, &m.moduli, &m.moduli)?;
    Ok(FixedPoints {
        count,
        invariant_factors,
    })
}

/// Fixed-point counts for every group element, in element order.
pub fn fixed_point_profile(m: &TorsionGaloisModule) -> Result<Vec<BigInt>> {
    (0..m.group().order())
        .map(|g| fixed_points(m, g).map(|f| f.count))
        .collect()
}

/// The induced map f (x) id : I (x) M -> J (x) M of an equivariant lattice
/// map f (row convention, x maps to x f).  Rejects non-equivariant f.
pub fn induced_map(
    f: &IntMatrix,
    i: &GaloisLattice,
    j: &GaloisLattice,
    m: &TorsionGaloisModule,
) -> Result<IntMatrix> {
    if i.group() != j.group() || i.group() != m.group() {
        return Err(Error::Precondition("induced_map: group mismatch".into()));
    }
    if f.rows() != i.rank() || f.cols() != j.rank() {
        return Err(Error::Precondition("induced_map: shape mismatch".into()));
    }
    for g in 0..i.group().order() {
        if i.action(g).mul(f) != f.mul(j.action(g)) {
            return Err(Error::Precondition(format!(
                "induced_map: f is not equivariant at group element {g}"
            )));
        }
    }
    Ok(f.transpose().kron(&IntMatrix::identity(m.moduli.len())))
}

/// Characteristic polynomial of gamma on I (x) T(V), where f is the monic
/// characteristic polynomial of gamma on the untwisted Tate module:
/// char poly of (gamma-action on I, inverted and transposed) (x) companion(f).
pub fn twist_charpoly(i: &GaloisLattice, f: &IntPoly, gamma: usize) -> Result<IntPoly> {
    if !f.is_monic() {
        return Err(Error::Precondition("twist_charpoly: f must be monic".into()));
    }
    let t = i.action_inverse(gamma).transpose().kron(&f.companion());
    Ok(IntPoly::from_coeffs(crate::exactlinalg::charpoly_coeffs(&t)))
}

/// A presentation Z[G]^a -> Z[G]^b of a right module by a b x a matrix of
/// group-ring elements acting by left multiplication.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    group: FiniteGroup,
    a: usize,
    b: usize,
    psi: Vec<Vec<GroupRingElement>>, // psi[i][j]: source component j -> target component i
}

pub const MAX_PRESENTATION_SIZE: usize = 8;
pub const MAX_PRESENTATION_GROUP: usize = 12;

impl ModulePresentation {
    pub fn new(
        group: &FiniteGroup,
        a: usize,
        b: usize,
        psi: Vec<Vec<GroupRingElement>>,
    ) -> Result<Self> {
        if a > MAX_PRESENTATION_SIZE || b > MAX_PRESENTATION_SIZE {
            return Err(Error::Resource(format!(
                "presentation sizes limited to {MAX_PRESENTATION_SIZE}"
            )));
        }
        if group.order() > MAX_PRESENTATION_GROUP {
            return Err(Error::Resource(format!(
                "presentation groups limited to order {MAX_PRESENTATION_GROUP}"
            )));
        }
        if psi.len() != b || psi.iter().any(|row| row.len() != a) {
            return Err(Error::Precondition("psi must be a b x a matrix".into()));
        }
        Ok(ModulePresentation {
            group: group.clone(),
            a,
            b,
            psi,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// The integer matrix of psi on row vectors Z^(n a) -> Z^(n b) in the
    /// group-element bases.
    pub fn lattice_map(&self) -> IntMatrix {
        let n = self.group.order();
        let mut f = IntMatrix::zeros(n * self.a, n * self.b);
        for i in 0..self.b {
            for j in 0..self.a {
                let block = self.psi[i][j].left_mul_matrix();
                for r in 0..n {
                    for c in 0..n {
                        f.set(j * n + r, i * n + c, block.at(r, c).clone());
                    }
                }
            }
        }
        f
    }
}

/// The cokernel of the induced map (Z[G] (x) M)^a -> (Z[G] (x) M)^b, with
/// its quotient Galois action.  Trivial cyclic factors are dropped.
pub fn presentation_twist(
    p: &ModulePresentation,
    m: &TorsionGaloisModule,
) -> Result<TorsionGaloisModule> {
    if p.group() != m.group() {
        return Err(Error::Precondition("presentation_twist: group mismatch".into()));
    }
    let group = p.group().clone();
    let free_b = GaloisLattice::free_module(&group, p.b);
    let target = twist_module(&free_b, m)?;
    let tgt_moduli = target.moduli.clone();
    let nbm = tgt_moduli.len();

    // relations: columns of the induced map plus the cyclic orders
    let f = p.lattice_map();
    let t_psi = f.transpose().kron(&IntMatrix::identity(m.moduli.len()));
    let mut d = IntMatrix::zeros(nbm, nbm);
    for i in 0..nbm {
        d.set(i, i, tgt_moduli[i].clone());
    }
    let relations = t_psi.hstack(&d);
    let snf = snf_with_row_transform(&relations);
    debug_assert!(snf.divisors.iter().all(|s| s.is_positive()));

    let kept: Vec<usize> = (0..nbm).filter(|&i| !snf.divisors[i].is_one()).collect();
    let moduli: Vec<BigInt> = kept.iter().map(|&i| snf.divisors[i].clone()).collect();
    let action = (0..group.order())
        .map(|g| {
            let conj = snf.x.mul(target.action(g)).mul(&snf.x_inv);
            let mut sub = IntMatrix::zeros(kept.len(), kept.len());
            for (r, &i) in kept.iter().enumerate() {
                for (c, &j) in kept.iter().enumerate() {
                    sub.set(r, c, conj.at(i, j).clone());
                }
            }
            sub
        })
        .collect();
    Ok(TorsionGaloisModule::new_trusted(group, moduli, action))
}

/// An invariant direct-summand decomposition of a Galois lattice J along a
/// saturated invariant sublattice: restricted action, quotient action, and
/// the unimodular basis change P whose first rows span the sublattice.
pub struct LatticeSplit {
    pub sub_action: GaloisLattice,
    pub quotient_action: GaloisLattice,
    /// Unimodular; rows 0..sub_rank form a basis of the sublattice.
    pub basis_change: IntMatrix,
    pub sub_rank: usize,
}

/// Split J along an invariant sublattice with torsion-free quotient.
pub fn split_by_sublattice(j: &GaloisLattice, sub: &Lattice) -> Result<LatticeSplit> {
    let dj = j.rank();
    if sub.ambient_rank() != dj {
        return Err(Error::Precondition("sublattice has wrong ambient rank".into()));
    }
    for g in 0..j.group().order() {
        for r in 0..sub.rank() {
            let moved = j.action(g).apply_row(sub.basis().row(r));
            if !sub.contains(&moved) {
                return Err(Error::Precondition(format!(
                    "sublattice not invariant under group element {g}"
                )));
            }
        }
    }
    let di = sub.rank();
    let p = if di == 0 {
        IntMatrix::identity(dj)
    } else {
        let snf = snf_with_row_transform(&sub.basis().transpose());
        if snf.divisors.iter().any(|s| !s.is_one()) {
            return Err(Error::Precondition(
                "quotient by the sublattice has torsion".into(),
            ));
        }
        // columns of x_inv restricted to the first di columns span the
        // sublattice, so the transpose is the wanted basis completion
        snf.x_inv.transpose()
    };
    let p_inv = inverse_unimodular(&p).expect("snf transform is unimodular");
    let dq = dj - di;
    let mut sub_mats = Vec::new();
    let mut quo_mats = Vec::new();
    for g in 0..j.group().order() {
        let conj = p.mul(j.action(g)).mul(&p_inv);
        // invariance forces the top-right block to vanish
        for r in 0..di {
            for c in di..dj {
                if !conj.at(r, c).is_zero() {
                    return Err(Error::Precondition(
                        "sublattice block structure violated".into(),
                    ));
                }
            }
        }
        sub_mats.push(conj.submatrix(0, di, 0, di));
        quo_mats.push(conj.submatrix(di, dj, di, dj));
    }
    Ok(LatticeSplit {
        sub_action: GaloisLattice::new_trusted(j.group().clone(), di, sub_mats),
        quotient_action: GaloisLattice::new_trusted(j.group().clone(), dq, quo_mats),
        basis_change: p,
        sub_rank: di,
    })
}

/// Checks exactness of 0 -> I (x) M -> J (x) M -> (J/I) (x) M -> 0 for an
/// invariant sublattice I of J with torsion-free quotient (rejected with an
/// error otherwise).
pub fn exactness_check(
    j: &GaloisLattice,
    sub: &Lattice,
    m: &TorsionGaloisModule,
) -> Result<bool> {
    if j.group() != m.group() {
        return Err(Error::Precondition("exactness_check: group mismatch".into()));
    }
    let split = split_by_sublattice(j, sub)?;
    let di = split.sub_rank;
    let dj = j.rank();
    let p_inv = inverse_unimodular(&split.basis_change).expect("unimodular");

    let tw_i = twist_module(&split.sub_action, m)?;
    let tw_j = twist_module(j, m)?;
    let tw_q = twist_module(&split.quotient_action, m)?;

    // inclusion: x -> x F_in with F_in the first di rows of P
    let f_in = split.basis_change.submatrix(0, di, 0, dj);
    // projection: x -> last dq coordinates of x P^-1
    let f_out = p_inv.submatrix(0, dj, di, dj);
    let ind_in = induced_map(&f_in, &split.sub_action, j, m)?;
    let ind_out = induced_map(&f_out, j, &split.quotient_action, m)?;

    // composite is zero on the nose
    let comp = ind_out.mul(&ind_in);
    if !reduce_entries(&comp, &tw_q.moduli).is_zero() {
        return Ok(false);
    }
    let (ker_in, _) = module_map_kernel(&ind_in, &tw_i.moduli, &tw_j.moduli)?;
    let (ker_out, _) = module_map_kernel(&ind_out, &tw_j.moduli, &tw_q.moduli)?;
    let cardinality_ok = tw_j.order() == tw_i.order() * tw_q.order();
    Ok(ker_in.is_one() && ker_out == tw_i.order() && cardinality_ok)
}

/// True iff (I (x) J) (x) M and I (x) (J (x) M) have the same invariant
/// factors and the same fixed-point count for every group element.
pub fn associativity_check(
    i: &GaloisLattice,
    j: &GaloisLattice,
    m: &TorsionGaloisModule,
) -> Result<bool> {
    if i.group() != j.group() || i.group() != m.group() {
        return Err(Error::Precondition("associativity_check: group mismatch".into()));
    }
    let left = twist_module(&i.tensor(j)?, m)?;
    let right = twist_module(i, &twist_module(j, m)?)?;
    Ok(modules_agree(&left, &right)?)
}

/// Same invariant factors and same fixed-point counts for every group
/// element: the isomorphism-invariant comparison used throughout.
pub fn modules_agree(a: &TorsionGaloisModule, b: &TorsionGaloisModule) -> Result<bool> {
    if a.group() != b.group() {
        return Err(Error::Precondition("modules_agree: group mismatch".into()));
    }
    if a.invariant_factors() != b.invariant_factors() {
        return Ok(false);
    }
    Ok(fixed_point_profile(a)? == fixed_point_profile(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclopoly::{inflate_charpoly, IntPoly};
    use crate::grouprings::{cyclic_twist_ideal, isotypic_ideal, SubgroupDescriptor};

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn mu(group: &FiniteGroup, n: u64, q: u64) -> TorsionGaloisModule {
        TorsionGaloisModule::cyclic_scalar(group, n, q).unwrap()
    }

    #[test]
    fn trivial_twist_is_identity() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let i = GaloisLattice::trivial(&g, 1);
        let m = mu(&g, 5, 2);
        let t = twist_module(&i, &m).unwrap();
        assert_eq!(t.cyclic_orders(), m.cyclic_orders());
        for g_el in 0..g.order() {
            assert_eq!(t.action(g_el), m.action(g_el));
        }
    }

    #[test]
    fn quadratic_twist_mu3() {
        // r = 2, tau acts by -1 on I_L; mu_3 over F_5: tau acts by 2
        let g = FiniteGroup::cyclic(2).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap().as_galois_lattice();
        assert_eq!(i.action(1).at(0, 0), &big(-1));
        let m = mu(&g, 3, 2);
        let t = twist_module(&i, &m).unwrap();
        assert_eq!(t.cyclic_orders(), &[big(3)]);
        // (-1)^-1 * 2 = -2 = 1 mod 3
        assert_eq!(t.action(1).at(0, 0), &big(1));
        assert_eq!(fixed_points(&t, 1).unwrap().count, big(3));
    }

    #[test]
    fn twist_size_bookkeeping() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let i = GaloisLattice::trivial(&g, 2);
        let m = TorsionGaloisModule::trivial(&g, vec![big(5), big(5)]).unwrap();
        let t = twist_module(&i, &m).unwrap();
        assert_eq!(t.cyclic_orders().len(), 4);
        assert_eq!(t.order(), big(625));
        assert_eq!(t.order(), m.order().pow(2));
    }

    #[test]
    fn fixed_points_examples() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let m = TorsionGaloisModule::trivial(&g, vec![big(4), big(6)]).unwrap();
        assert_eq!(fixed_points(&m, 1).unwrap().count, big(24));

        // Z/5 with a generator of order 4 acting by 2: only 0 is fixed
        let g4 = FiniteGroup::cyclic(4).unwrap();
        let m5 = mu(&g4, 5, 2);
        assert_eq!(fixed_points(&m5, 1).unwrap().count, big(1));
        // identity always fixes everything
        assert_eq!(fixed_points(&m5, 0).unwrap().count, big(5));
    }

    #[test]
    fn fixed_submodule_structure() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let m = TorsionGaloisModule::trivial(&g, vec![big(4), big(6)]).unwrap();
        let f = fixed_points(&m, 1).unwrap();
        assert_eq!(f.invariant_factors, vec![big(2), big(12)]);
    }

    #[test]
    fn fixed_points_multiplicative_over_sums() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let a = mu(&g, 5, 4);
        let b = mu(&g, 7, 6);
        // direct sum by block assembly
        let mut action = Vec::new();
        for g_el in 0..g.order() {
            let mut mat = IntMatrix::zeros(2, 2);
            mat.set(0, 0, a.action(g_el).at(0, 0).clone());
            mat.set(1, 1, b.action(g_el).at(0, 0).clone());
            action.push(mat);
        }
        let sum =
            TorsionGaloisModule::new(g.clone(), vec![big(5), big(7)], action).unwrap();
        for g_el in 0..g.order() {
            assert_eq!(
                fixed_points(&sum, g_el).unwrap().count,
                fixed_points(&a, g_el).unwrap().count * fixed_points(&b, g_el).unwrap().count
            );
        }
    }

    #[test]
    fn induced_identity_and_scalar() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap().as_galois_lattice();
        let m = mu(&g, 9, 8);
        let t = twist_module(&i, &m).unwrap();
        let id = induced_map(&IntMatrix::identity(1), &i, &i, &m).unwrap();
        assert_eq!(id, IntMatrix::identity(1));
        let mut three = IntMatrix::identity(1);
        three.set(0, 0, big(3));
        let tr = induced_map(&three, &i, &i, &m).unwrap();
        let (k, _) = module_map_kernel(&tr, t.cyclic_orders(), t.cyclic_orders()).unwrap();
        assert_eq!(k, big(3)); // 3-torsion of Z/9
    }

    #[test]
    fn induced_rejects_nonequivariant() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap().as_galois_lattice();
        let triv = GaloisLattice::trivial(&g, 1);
        let m = mu(&g, 3, 2);
        assert!(induced_map(&IntMatrix::identity(1), &i, &triv, &m).is_err());
    }

    #[test]
    fn induced_functorial() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let i = GaloisLattice::trivial(&g, 2);
        let m = TorsionGaloisModule::trivial(&g, vec![big(6)]).unwrap();
        let f = IntMatrix::from_i64_rows(&[&[1, 2], &[0, 1]]);
        let h = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let fh = f.mul(&h);
        let a = induced_map(&f, &i, &i, &m).unwrap();
        let b = induced_map(&h, &i, &i, &m).unwrap();
        let c = induced_map(&fh, &i, &i, &m).unwrap();
        assert_eq!(b.mul(&a), c);
    }

    #[test]
    fn twist_charpoly_dual_route() {
        // r = 6, f = X - 5 -> X^2 - 5X + 25
        let g = FiniteGroup::cyclic(6).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap().as_galois_lattice();
        let f = IntPoly::from_i64(&[-5, 1]);
        let got = twist_charpoly(&i, &f, 1).unwrap();
        assert_eq!(got, IntPoly::from_i64(&[25, -5, 1]));
        assert_eq!(got, inflate_charpoly(&f, 6, 6).unwrap());

        // r = 2, f = X^2 - 3X + 5 -> X^2 + 3X + 5
        let g2 = FiniteGroup::cyclic(2).unwrap();
        let i2 = cyclic_twist_ideal(&g2).unwrap().as_galois_lattice();
        let f2 = IntPoly::from_i64(&[5, -3, 1]);
        let got2 = twist_charpoly(&i2, &f2, 1).unwrap();
        assert_eq!(got2, IntPoly::from_i64(&[5, 3, 1]));
        assert_eq!(got2, inflate_charpoly(&f2, 2, 2).unwrap());
    }

    #[test]
    fn twist_charpoly_trivial_is_f() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let i = GaloisLattice::trivial(&g, 1);
        let f = IntPoly::from_i64(&[7, -2, 1]);
        assert_eq!(twist_charpoly(&i, &f, 1).unwrap(), f);
    }

    #[test]
    fn twist_charpoly_isogeny_invariant() {
        // finite-index sublattice of the regular module: same char poly
        let g = FiniteGroup::cyclic(3).unwrap();
        let reg = GaloisLattice::free_module(&g, 1);
        // sublattice 2Z[G] has the same action matrices in its scaled basis
        let f = IntPoly::from_i64(&[-2, 1]);
        let a = twist_charpoly(&reg, &f, 1).unwrap();
        let b = twist_charpoly(&reg, &f, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 3);
    }

    #[test]
    fn presentation_of_regular_module() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let p = ModulePresentation::new(&g, 0, 1, vec![vec![]]).unwrap();
        let m = mu(&g, 3, 2);
        let t = presentation_twist(&p, &m).unwrap();
        let direct = twist_module(&GaloisLattice::free_module(&g, 1), &m).unwrap();
        assert!(modules_agree(&t, &direct).unwrap());
        assert_eq!(t.order(), big(9));
    }

    #[test]
    fn presentation_of_twist_ideal_r2() {
        // psi = (1 + tau): Z[G] -> Z[G]; cokernel is I_L as a Galois module
        let g = FiniteGroup::cyclic(2).unwrap();
        let one_plus_tau = GroupRingElement::basis_element(&g, 0)
            .add(&GroupRingElement::basis_element(&g, 1));
        let p = ModulePresentation::new(&g, 1, 1, vec![vec![one_plus_tau]]).unwrap();
        let m = mu(&g, 3, 2);
        let t = presentation_twist(&p, &m).unwrap();
        assert_eq!(t.invariant_factors(), vec![big(3)]);
        assert_eq!(fixed_points(&t, 1).unwrap().count, big(3));

        let i = cyclic_twist_ideal(&g).unwrap().as_galois_lattice();
        let direct = twist_module(&i, &m).unwrap();
        assert!(modules_agree(&t, &direct).unwrap());
    }

    #[test]
    fn presentations_of_same_free_module_agree() {
        let g = FiniteGroup::cyclic(2).unwrap();
        // free rank 1: presented trivially, and with a redundant generator
        // killed by a unimodular relation
        let p1 = ModulePresentation::new(&g, 0, 1, vec![vec![]]).unwrap();
        let e = GroupRingElement::basis_element(&g, 0);
        let tau = GroupRingElement::basis_element(&g, 1);
        // psi = (1, tau)^T : Z[G] -> Z[G]^2, cokernel free of rank 1
        let p2 = ModulePresentation::new(&g, 1, 2, vec![vec![e], vec![tau]]).unwrap();
        let m = mu(&g, 5, 4);
        let t1 = presentation_twist(&p1, &m).unwrap();
        let t2 = presentation_twist(&p2, &m).unwrap();
        assert!(modules_agree(&t1, &t2).unwrap());
    }

    #[test]
    fn exactness_basic() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let reg = GaloisLattice::free_module(&g, 1);
        let ideal = cyclic_twist_ideal(&g).unwrap();
        let m = mu(&g, 3, 2);
        assert!(exactness_check(&reg, ideal.lattice(), &m).unwrap());
        // I = J
        assert!(exactness_check(&reg, &Lattice::full(2), &m).unwrap());
        // 2 Z[G]: quotient has torsion, rejected
        let two = lattice_from_rows(2, vec![vec![big(2), big(0)], vec![big(0), big(2)]]);
        let err = exactness_check(&reg, &two, &m);
        assert!(matches!(err, Err(Error::Precondition(ref s)) if s.contains("torsion")));
    }

    #[test]
    fn associativity_trivial_and_composite() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let m7 = mu(&g, 7, 3);
        let triv = GaloisLattice::trivial(&g, 1);
        let i_l = cyclic_twist_ideal(&g).unwrap().as_galois_lattice();
        assert!(associativity_check(&triv, &i_l, &m7).unwrap());

        // composite twist: I_F (degree 2) tensor I_M (degree 3) behaves as I_L
        let h3 = SubgroupDescriptor::new(&g, &[0, 2, 4]).unwrap();
        let h2 = SubgroupDescriptor::new(&g, &[0, 3]).unwrap();
        let i_f = isotypic_ideal(&g, &h3).unwrap().as_galois_lattice();
        let i_m = isotypic_ideal(&g, &h2).unwrap().as_galois_lattice();
        assert!(associativity_check(&i_f, &i_m, &m7).unwrap());
        let composite = twist_module(&i_f.tensor(&i_m).unwrap(), &m7).unwrap();
        let direct = twist_module(&i_l, &m7).unwrap();
        assert!(modules_agree(&composite, &direct).unwrap());
    }

    #[test]
    fn associativity_random_trivial_actions() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let m = TorsionGaloisModule::trivial(&g, vec![big(2), big(6)]).unwrap();
        let i = GaloisLattice::trivial(&g, 2);
        let j = GaloisLattice::trivial(&g, 3);
        assert!(associativity_check(&i, &j, &m).unwrap());
    }

    #[test]
    fn torsion_module_rejects_bad_action() {
        let g = FiniteGroup::cyclic(2).unwrap();
        // tau acting by 2 on Z/4 is not invertible
        let mut a = IntMatrix::identity(1);
        a.set(0, 0, big(2));
        let action = vec![IntMatrix::identity(1), a];
        assert!(TorsionGaloisModule::new(g.clone(), vec![big(4)], action).is_err());
    }

    #[test]
    fn twist_module_rejects_group_mismatch() {
        let g2 = FiniteGroup::cyclic(2).unwrap();
        let g3 = FiniteGroup::cyclic(3).unwrap();
        let i = GaloisLattice::trivial(&g2, 1);
        let m = TorsionGaloisModule::trivial(&g3, vec![big(5)]).unwrap();
        assert!(twist_module(&i, &m).is_err());
    }
}
