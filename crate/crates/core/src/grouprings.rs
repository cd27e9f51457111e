//! Finite groups by multiplication table, the ring Z[G], its right ideals as
//! integer lattices, cyclotomic and isotypic ideals, annihilators, duals,
//! semidirect twist ideals, and the coset-permutation criterion.
//!
//! Conventions, fixed once: the generator of a cyclic group is element
//! index 1; G acts on Z[G] lattices on the right; matrices act on row
//! vectors; the contragredient dual action is by inverse-transpose.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclopoly::{self, euler_phi, prime_divisors};
use crate::exactlinalg::{
    inverse_unimodular, kernel, lattice_from_rows, saturate, IntMatrix, Lattice,
};
use crate::galois_modules::GaloisLattice;
use crate::{Error, Result};

pub const MAX_GROUP_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    Product(usize, usize),
    Semidirect {
        gamma_order: usize,
        h_order: usize,
        exponent: usize,
    },
    Table,
}

#[derive(Debug)]
struct GroupInner {
    order: usize,
    mul: Vec<usize>, // order x order, row-major: mul[a * order + b] = a*b
    identity: usize,
    inv: Vec<usize>,
    kind: GroupKind,
}

/// A finite group given by its multiplication table.  Cheap to clone.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    inner: Arc<GroupInner>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order && self.inner.mul == other.inner.mul)
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    fn from_table(mul: Vec<usize>, order: usize, kind: GroupKind) -> Result<Self> {
        if order == 0 || order > MAX_GROUP_ORDER {
            return Err(Error::Precondition(format!(
                "group order must be in 1..={MAX_GROUP_ORDER}"
            )));
        }
        assert_eq!(mul.len(), order * order);
        // identity
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul[e * order + a] == a && mul[a * order + e] == a))
            .ok_or_else(|| Error::Precondition("multiplication table has no identity".into()))?;
        // inverses
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            inv[a] = (0..order)
                .find(|&b| mul[a * order + b] == identity && mul[b * order + a] == identity)
                .ok_or_else(|| {
                    Error::Precondition(format!("element {a} has no inverse"))
                })?;
        }
        // associativity
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b];
                for c in 0..order {
                    let bc = mul[b * order + c];
                    if mul[ab * order + c] != mul[a * order + bc] {
                        return Err(Error::Precondition(format!(
                            "multiplication table not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            inner: Arc::new(GroupInner {
                order,
                mul,
                identity,
                inv,
                kind,
            }),
        })
    }

    pub fn cyclic(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Precondition("cyclic: order must be >= 1".into()));
        }
        let mut mul = vec![0usize; r * r];
        for a in 0..r {
            for b in 0..r {
                mul[a * r + b] = (a + b) % r;
            }
        }
        Self::from_table(mul, r, GroupKind::Cyclic(r))
    }

    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        let (n1, n2) = (g1.order(), g2.order());
        let n = n1 * n2;
        let mut mul = vec![0usize; n * n];
        let idx = |a1: usize, a2: usize| a1 * n2 + a2;
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                for b1 in 0..n1 {
                    for b2 in 0..n2 {
                        mul[idx(a1, a2) * n + idx(b1, b2)] =
                            idx(g1.mul(a1, b1), g2.mul(a2, b2));
                    }
                }
            }
        }
        let kind = GroupKind::Product(n1, n2);
        Self::from_table(mul, n, kind)
    }

    pub fn product_of_cyclics(r1: usize, r2: usize) -> Result<Self> {
        Self::direct_product(&Self::cyclic(r1)?, &Self::cyclic(r2)?)
    }

    /// Semidirect product (Z/gamma_order) x| (Z/h_order), where the chosen
    /// generator of H conjugates the generator of Gamma to its `exponent`
    /// power.  Element (gamma^i, h^j) has index j * gamma_order + i, so the
    /// normal cyclic subgroup occupies indices 0..gamma_order with its
    /// generator at index 1.
    pub fn semidirect(gamma_order: usize, h_order: usize, exponent: usize) -> Result<Self> {
        if gamma_order == 0 || h_order == 0 {
            return Err(Error::Precondition("semidirect: orders must be >= 1".into()));
        }
        let r = gamma_order;
        // the action must be an automorphism of Z/r of order dividing h_order
        let e = exponent % r.max(1);
        let mut pow = 1usize;
        for _ in 0..h_order {
            pow = pow * e % r.max(1);
        }
        if r > 1 && (gcd(e, r) != 1 || pow != 1 % r) {
            return Err(Error::Precondition(format!(
                "semidirect: exponent {exponent} does not define an order-{h_order} action on Z/{r}"
            )));
        }
        let n = r * h_order;
        let mut epow = vec![1usize; h_order];
        for j in 1..h_order {
            epow[j] = epow[j - 1] * e % r.max(1);
        }
        let mut mul = vec![0usize; n * n];
        let idx = |i: usize, j: usize| j * r + i;
        for i in 0..r {
            for j in 0..h_order {
                for i2 in 0..r {
                    for j2 in 0..h_order {
                        let ii = (i + i2 * epow[j]) % r;
                        let jj = (j + j2) % h_order;
                        mul[idx(i, j) * n + idx(i2, j2)] = idx(ii, jj);
                    }
                }
            }
        }
        Self::from_table(
            mul,
            n,
            GroupKind::Semidirect {
                gamma_order,
                h_order,
                exponent: e,
            },
        )
    }

    pub fn dihedral(r: usize) -> Result<Self> {
        Self::semidirect(r, 2, if r <= 1 { 1 } else { r - 1 })
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> usize {
        self.inner.identity
    }

    pub fn kind(&self) -> &GroupKind {
        &self.inner.kind
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul[a * self.inner.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inner.inv[a]
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|a| self.element_order(a) == self.order())
    }

    /// The conventional generator tau: element index 1 (the identity for the
    /// trivial group).  Only meaningful for groups built with `cyclic`.
    pub fn tau(&self) -> usize {
        if self.order() == 1 {
            self.identity()
        } else {
            1
        }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[self.identity()] = true;
        loop {
            let mut grew = false;
            let current: Vec<usize> = (0..self.order()).filter(|&i| members[i]).collect();
            for &a in &current {
                for &g in gens {
                    let x = self.mul(a, g);
                    if !members[x] {
                        members[x] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        (0..self.order()).filter(|&i| members[i]).collect()
    }

    /// All subgroups, each as a sorted element list.  Intended for orders
    /// <= 24 or so.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut subs: Vec<Vec<usize>> = vec![vec![self.identity()]];
        let mut frontier = subs.clone();
        while let Some(s) = frontier.pop() {
            for g in 0..self.order() {
                if s.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(g);
                let t = self.subgroup_generated(&gens);
                if !subs.contains(&t) {
                    subs.push(t.clone());
                    frontier.push(t);
                }
            }
        }
        subs.sort_by_key(|s| (s.len(), s.clone()));
        subs
    }

    /// Order of the coset gH in G/H (H need not be normal here, but all
    /// callers use abelian G).
    pub fn coset_order(&self, g: usize, h: &[usize]) -> usize {
        let mut x = g;
        let mut n = 1;
        while h.binary_search(&x).is_err() {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A subgroup of a fixed group, validated closed under multiplication and
/// inverse on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDescriptor {
    group: FiniteGroup,
    elements: Vec<usize>, // sorted
}

impl SubgroupDescriptor {
    pub fn new(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.iter().any(|&e| e >= group.order()) {
            return Err(Error::Precondition("subgroup element out of range".into()));
        }
        if elems.binary_search(&group.identity()).is_err() {
            return Err(Error::Precondition("subgroup must contain the identity".into()));
        }
        for &a in &elems {
            if elems.binary_search(&group.inv(a)).is_err() {
                return Err(Error::Precondition("subgroup not closed under inverse".into()));
            }
            for &b in &elems {
                if elems.binary_search(&group.mul(a, b)).is_err() {
                    return Err(Error::Precondition(
                        "subgroup not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(SubgroupDescriptor {
            group: group.clone(),
            elements: elems,
        })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

/// An element of Z[G] as a coefficient vector indexed by group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    group: FiniteGroup,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn new(group: &FiniteGroup, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), group.order());
        GroupRingElement {
            group: group.clone(),
            coeffs,
        }
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        Self::new(group, vec![BigInt::zero(); group.order()])
    }

    pub fn basis_element(group: &FiniteGroup, g: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[g] = BigInt::one();
        e
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        assert_eq!(self.group, other.group);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(&self.group, coeffs)
    }

    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        assert_eq!(self.group, other.group);
        let g = &self.group;
        let mut out = vec![BigInt::zero(); g.order()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    out[g.mul(a, b)] += ca * cb;
                }
            }
        }
        Self::new(g, out)
    }

    pub fn scale(&self, c: &BigInt) -> GroupRingElement {
        Self::new(
            &self.group,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    /// Matrix of right multiplication, acting on row vectors: vec(x * alpha)
    /// = vec(x) * M.
    pub fn right_mul_matrix(&self) -> IntMatrix {
        let g = &self.group;
        let n = g.order();
        let mut m = IntMatrix::zeros(n, n);
        for k in 0..n {
            for (a, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let col = g.mul(k, a);
                    let v = m.at(k, col) + c;
                    m.set(k, col, v);
                }
            }
        }
        m
    }

    /// Matrix of left multiplication, acting on row vectors: vec(alpha * x)
    /// = vec(x) * M.
    pub fn left_mul_matrix(&self) -> IntMatrix {
        let g = &self.group;
        let n = g.order();
        let mut m = IntMatrix::zeros(n, n);
        for k in 0..n {
            for (a, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let col = g.mul(a, k);
                    let v = m.at(k, col) + c;
                    m.set(k, col, v);
                }
            }
        }
        m
    }
}

/// Sum of the elements of a subgroup: the norm element N_{L/F} for
/// H = Gal(L/F).
pub fn norm_element(group: &FiniteGroup, h: &SubgroupDescriptor) -> GroupRingElement {
    let mut e = GroupRingElement::zero(group);
    for &g in h.elements() {
        e.coeffs[g] = BigInt::one();
    }
    e
}

/// Evaluate an integer polynomial at the group element `g` inside Z[G].
pub fn poly_at_element(group: &FiniteGroup, f: &cyclopoly::IntPoly, g: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero(group);
    let mut power = group.identity();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i > 0 {
            power = group.mul(power, g);
        }
        out.coeffs[power] += c;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingIdeal {
    group: FiniteGroup,
    lattice: Lattice,
    right_closed: bool,
    left_closed: bool,
    saturated: bool,
}

impl GroupRingIdeal {
    /// Wrap a lattice in Z^|G| and verify closure and saturation flags.
    pub fn from_lattice(group: &FiniteGroup, lattice: Lattice) -> Self {
        assert_eq!(lattice.ambient_rank(), group.order());
        let right_closed = ideal_closed(group, &lattice, false);
        let left_closed = ideal_closed(group, &lattice, true);
        let saturated = saturate(&lattice) == lattice;
        GroupRingIdeal {
            group: group.clone(),
            lattice,
            right_closed,
            left_closed,
            saturated,
        }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Self::from_lattice(group, Lattice::full(group.order()))
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        Self::from_lattice(group, Lattice::zero(group.order()))
    }

    /// The right ideal generated by a single element: span of alpha * g.
    pub fn principal_right(group: &FiniteGroup, alpha: &GroupRingElement) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..group.order())
            .map(|g| {
                alpha
                    .mul(&GroupRingElement::basis_element(group, g))
                    .coeffs()
                    .to_vec()
            })
            .collect();
        Self::from_lattice(group, lattice_from_rows(group.order(), rows))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn is_right_ideal(&self) -> bool {
        self.right_closed
    }

    pub fn is_left_ideal(&self) -> bool {
        self.left_closed
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Right-action matrices of the group on the ideal's own basis.  Only
    /// valid when the ideal is right-closed.
    pub fn action_matrices(&self) -> Vec<IntMatrix> {
        assert!(self.right_closed, "action matrices need a right ideal");
        let n = self.group.order();
        let d = self.rank();
        (0..n)
            .map(|g| {
                let mut m = IntMatrix::zeros(d, d);
                for i in 0..d {
                    let moved = permute_right(&self.group, self.lattice.basis().row(i), g);
                    let coords = self
                        .lattice
                        .coords_of(&moved)
                        .expect("right-closed ideal");
                    for (j, c) in coords.into_iter().enumerate() {
                        m.set(i, j, c);
                    }
                }
                m
            })
            .collect()
    }

    /// View the ideal as a Galois lattice with its intrinsic right action.
    pub fn as_galois_lattice(&self) -> GaloisLattice {
        GaloisLattice::new(self.group.clone(), self.rank(), self.action_matrices())
            .expect("ideal action is a valid right action")
    }
}

/// vec(x * g) for a group element g.
fn permute_right(group: &FiniteGroup, v: &[BigInt], g: usize) -> Vec<BigInt> {
    let n = group.order();
    let mut out = vec![BigInt::zero(); n];
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out[group.mul(k, g)] = c.clone();
        }
    }
    out
}

/// vec(g * x) for a group element g.
fn permute_left(group: &FiniteGroup, v: &[BigInt], g: usize) -> Vec<BigInt> {
    let n = group.order();
    let mut out = vec![BigInt::zero(); n];
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out[group.mul(g, k)] = c.clone();
        }
    }
    out
}

fn ideal_closed(group: &FiniteGroup, lattice: &Lattice, left: bool) -> bool {
    for i in 0..lattice.rank() {
        let row = lattice.basis().row(i);
        for g in 0..group.order() {
            let moved = if left {
                permute_left(group, row, g)
            } else {
                permute_right(group, row, g)
            };
            if !lattice.contains(&moved) {
                return false;
            }
        }
    }
    true
}

/// The cyclotomic twist ideal I_L = Psi_r(tau) Z[G] for cyclic G of order r.
pub fn cyclic_twist_ideal(group: &FiniteGroup) -> Result<GroupRingIdeal> {
    if !group.is_cyclic() || group.element_order(group.tau()) != group.order() {
        return Err(Error::Precondition(
            "cyclic_twist_ideal: group must be cyclic with generator at index 1".into(),
        ));
    }
    let r = group.order() as u64;
    let psi_tau = poly_at_element(group, &cyclopoly::psi(r), group.tau());
    Ok(GroupRingIdeal::principal_right(group, &psi_tau))
}

/// The isotypic ideal I_F = Q[G]_F intersect Z[G] for abelian G, where F is
/// specified by the kernel subgroup Gal(L/F) (so the quotient G/H must be
/// cyclic).  Computed as the saturated integer kernel of the defining
///// character conditions: fixed by H, and killed by the norm of every minimal
/// over-subgroup of H.
pub fn isotypic_ideal(group: &FiniteGroup, h: &SubgroupDescriptor) -> Result<GroupRingIdeal> {
    if !group.is_abelian() {
        return Err(Error::Precondition("isotypic_ideal: group must be abelian".into()));
    }
    let quotient_order = group.order() / h.len();
    let quotient_cyclic = (0..group.order())
        .any(|g| group.coset_order(g, h.elements()) == quotient_order);
    if !quotient_cyclic {
        return Err(Error::Precondition(
            "isotypic_ideal: quotient by the kernel subgroup is not cyclic".into(),
        ));
    }
    let n = group.order();
    let mut blocks: Vec<IntMatrix> = Vec::new();
    // x * h = x for every h in H
    for &hh in h.elements() {
        if hh == group.identity() {
            continue;
        }
        let m = GroupRingElement::basis_element(group, hh).right_mul_matrix();
        let diff = m.add(&IntMatrix::identity(n).neg());
        blocks.push(diff);
    }
    // x * N_K = 0 for every minimal over-subgroup K of H
    for k in minimal_over_subgroups(group, h) {
        let nk = norm_element(group, &k);
        blocks.push(nk.right_mul_matrix());
    }
    let lattice = if blocks.is_empty() {
        // H = G and G/H trivial cyclic: the trivial isotypic piece with no
        // conditions can only happen for the trivial group
        Lattice::full(n)
    } else {
        let mut stacked = blocks[0].clone();
        for b in &blocks[1..] {
            stacked = stacked.hstack(b);
        }
        kernel(&stacked)
    };
    let ideal = GroupRingIdeal::from_lattice(group, lattice);
    debug_assert_eq!(ideal.rank() as u64, euler_phi(quotient_order as u64));
    Ok(ideal)
}

/// Subgroups K with H < K <= G and [K : H] prime.
fn minimal_over_subgroups(
    group: &FiniteGroup,
    h: &SubgroupDescriptor,
) -> Vec<SubgroupDescriptor> {
    let mut out: Vec<SubgroupDescriptor> = Vec::new();
    for g in 0..group.order() {
        if h.contains(g) {
            continue;
        }
        let m = group.coset_order(g, h.elements());
        for p in prime_divisors(m as u64) {
            let k_elt = group.pow(g, m / p as usize);
            let mut gens = h.elements().to_vec();
            gens.push(k_elt);
            let k_elems = group.subgroup_generated(&gens);
            if k_elems.len() == h.len() * p as usize {
                let k = SubgroupDescriptor::new(group, &k_elems).expect("closed by construction");
                if !out.contains(&k) {
                    out.push(k);
                }
            }
        }
    }
    out
}

/// The left annihilator { alpha : alpha * I = 0 }.
pub fn annihilator(ideal: &GroupRingIdeal) -> GroupRingIdeal {
    let group = ideal.group();
    let n = group.order();
    if ideal.rank() == 0 {
        return GroupRingIdeal::full(group);
    }
    let mut blocks: Vec<IntMatrix> = Vec::new();
    for i in 0..ideal.rank() {
        let v = ideal.lattice().basis().row(i);
        // row g of the block is vec(g * v); then alpha * v = vec(alpha) * block
        let mut block = IntMatrix::zeros(n, n);
        for g in 0..n {
            let gv = permute_left(group, v, g);
            for (c, x) in gv.into_iter().enumerate() {
                block.set(g, c, x);
            }
        }
        blocks.push(block);
    }
    let mut stacked = blocks[0].clone();
    for b in &blocks[1..] {
        stacked = stacked.hstack(b);
    }
    GroupRingIdeal::from_lattice(group, kernel(&stacked))
}

/// The right annihilator { alpha : J * alpha = 0 } of a left ideal.
pub fn right_annihilator(ideal: &GroupRingIdeal) -> GroupRingIdeal {
    let group = ideal.group();
    let n = group.order();
    if ideal.rank() == 0 {
        return GroupRingIdeal::full(group);
    }
    let mut blocks: Vec<IntMatrix> = Vec::new();
    for i in 0..ideal.rank() {
        let v = ideal.lattice().basis().row(i);
        let mut block = IntMatrix::zeros(n, n);
        for g in 0..n {
            let vg = permute_right(group, v, g);
            for (c, x) in vg.into_iter().enumerate() {
                block.set(g, c, x);
            }
        }
        blocks.push(block);
    }
    let mut stacked = blocks[0].clone();
    for b in &blocks[1..] {
        stacked = stacked.hstack(b);
    }
    GroupRingIdeal::from_lattice(group, kernel(&stacked))
}

/// True iff the right annihilator of the left annihilator recovers the ideal
/// (holds for saturated right ideals).
pub fn double_annihilator_check(ideal: &GroupRingIdeal) -> bool {
    let back = right_annihilator(&annihilator(ideal));
    back.lattice() == ideal.lattice()
}

/// The dual lattice Hom(I, Z) with the contragredient action.
pub fn hat_dual(ideal: &GroupRingIdeal) -> GaloisLattice {
    let group = ideal.group();
    if ideal.rank() == 0 {
        return GaloisLattice::new(group.clone(), 0, vec![IntMatrix::zeros(0, 0); group.order()])
            .expect("trivial lattice");
    }
    let action = ideal.action_matrices();
    let dual: Vec<IntMatrix> = action
        .iter()
        .map(|a| {
            inverse_unimodular(a)
                .expect("group acts by unimodular matrices")
                .transpose()
        })
        .collect();
    GaloisLattice::new(group.clone(), ideal.rank(), dual).expect("contragredient action")
}

/// Lemma-level identity for cyclic G: the annihilator of I_L equals both the
/// ideal generated by Phi_r(tau) and the ideals generated by the norm
/// elements of all proper subfields (resp. the prime-index ones).
pub fn norm_generators_equal_annihilator(group: &FiniteGroup) -> Result<bool> {
    if !group.is_cyclic() || group.element_order(group.tau()) != group.order() {
        return Err(Error::Precondition("requires cyclic G with generator at index 1".into()));
    }
    let r = group.order() as u64;
    let phi_tau = poly_at_element(group, &cyclopoly::cyclotomic(r), group.tau());
    let phi_ideal = GroupRingIdeal::principal_right(group, &phi_tau);
    let ann = annihilator(&cyclic_twist_ideal(group)?);

    let mut omega_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut omega_prime_rows: Vec<Vec<BigInt>> = Vec::new();
    for sub in group.all_subgroups() {
        if sub.len() == 1 {
            continue; // F = L excluded
        }
        let h = SubgroupDescriptor::new(group, &sub)?;
        let nh = norm_element(group, &h);
        for g in 0..group.order() {
            let row = nh
                .mul(&GroupRingElement::basis_element(group, g))
                .coeffs()
                .to_vec();
            omega_rows.push(row.clone());
            if prime_divisors(sub.len() as u64).len() == 1
                && sub.len() as u64 == prime_divisors(sub.len() as u64)[0]
            {
                omega_prime_rows.push(row);
            }
        }
    }
    let omega = lattice_from_rows(group.order(), omega_rows);
    let omega_prime = lattice_from_rows(group.order(), omega_prime_rows);
    Ok(ann.lattice() == phi_ideal.lattice() && phi_ideal.lattice() == &omega && omega == omega_prime)
}

/// The semidirect twist ideal J_L = N_H * I_{L/K} inside Z[G], for G built by
/// the `semidirect` constructor.
pub fn semidirect_twist_ideal(group: &FiniteGroup) -> Result<GroupRingIdeal> {
    let GroupKind::Semidirect {
        gamma_order,
        h_order,
        ..
    } = *group.kind()
    else {
        return Err(Error::Precondition(
            "semidirect_twist_ideal: group must come from the semidirect constructor".into(),
        ));
    };
    let r = gamma_order;
    let gamma = FiniteGroup::cyclic(r)?;
    let inner = cyclic_twist_ideal(&gamma)?;
    // H = { (0, j) } at indices j * r
    let h_elems: Vec<usize> = (0..h_order).map(|j| j * r).collect();
    let h = SubgroupDescriptor::new(group, &h_elems)?;
    let nh = norm_element(group, &h);
    let nh_mat = nh.left_mul_matrix();
    let mut rows = Vec::new();
    for i in 0..inner.rank() {
        // embed the Gamma-coefficient vector at indices 0..r, then apply N_H
        let mut v = vec![BigInt::zero(); group.order()];
        v[..r].clone_from_slice(inner.lattice().basis().row(i));
        rows.push(nh_mat.apply_row(&v));
    }
    let ideal = GroupRingIdeal::from_lattice(group, lattice_from_rows(group.order(), rows));
    if !ideal.is_right_ideal() || !ideal.is_saturated() {
        return Err(Error::Precondition(
            "semidirect twist ideal failed right-ideal or saturation verification".into(),
        ));
    }
    Ok(ideal)
}

/// Matrix of left multiplication by N_H from I_{L/K} (embedded) to J_L, in
/// their canonical bases.  Unimodular iff the map is a bijection of lattices.
pub fn semidirect_norm_map_matrix(group: &FiniteGroup) -> Result<IntMatrix> {
    let GroupKind::Semidirect {
        gamma_order,
        h_order,
        ..
    } = *group.kind()
    else {
        return Err(Error::Precondition("requires a semidirect-constructed group".into()));
    };
    let r = gamma_order;
    let gamma = FiniteGroup::cyclic(r)?;
    let inner = cyclic_twist_ideal(&gamma)?;
    let j_ideal = semidirect_twist_ideal(group)?;
    let h_elems: Vec<usize> = (0..h_order).map(|j| j * r).collect();
    let h = SubgroupDescriptor::new(group, &h_elems)?;
    let nh_mat = norm_element(group, &h).left_mul_matrix();
    let d = inner.rank();
    let mut m = IntMatrix::zeros(d, d);
    for i in 0..d {
        let mut v = vec![BigInt::zero(); group.order()];
        v[..r].clone_from_slice(inner.lattice().basis().row(i));
        let image = nh_mat.apply_row(&v);
        let coords = j_ideal
            .lattice()
            .coords_of(&image)
            .ok_or_else(|| Error::Precondition("norm image not in J_L".into()))?;
        for (j, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Condition (*): sigma(gH) = sigma(g)H for every g in G and every
/// prime-order subgroup H.
pub fn perm_condition_star(group: &FiniteGroup, sigma: &[usize]) -> Result<bool> {
    check_permutation(group, sigma)?;
    for sub in group.all_subgroups() {
        let l = sub.len() as u64;
        if sub.len() < 2 || prime_divisors(l) != vec![l] {
            continue;
        }
        for g in 0..group.order() {
            let mut lhs: Vec<usize> = sub.iter().map(|&h| sigma[group.mul(g, h)]).collect();
            let mut rhs: Vec<usize> = sub.iter().map(|&h| group.mul(sigma[g], h)).collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff the linear extension of sigma maps the ideal's lattice into
/// itself.
pub fn perm_stabilizes(ideal: &GroupRingIdeal, sigma: &[usize]) -> Result<bool> {
    check_permutation(ideal.group(), sigma)?;
    for i in 0..ideal.rank() {
        let row = ideal.lattice().basis().row(i);
        let mut moved = vec![BigInt::zero(); row.len()];
        for (k, c) in row.iter().enumerate() {
            moved[sigma[k]] = c.clone();
        }
        if !ideal.lattice().contains(&moved) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_permutation(group: &FiniteGroup, sigma: &[usize]) -> Result<()> {
    let n = group.order();
    if sigma.len() != n {
        return Err(Error::Precondition("permutation has wrong length".into()));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::Precondition("not a bijection".into()));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Exhaustive scan over all |G|! permutations: returns (count satisfying
/// condition (*), count stabilizing I_L, whether the two sets coincide).
pub fn permutation_scan(group: &FiniteGroup) -> Result<(usize, usize, bool)> {
    let ideal = cyclic_twist_ideal(group)?;
    let n = group.order();
    let mut star_count = 0usize;
    let mut stab_count = 0usize;
    let mut coincide = true;
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(&mut perm, &mut |sigma| {
        let star = perm_condition_star(group, sigma).expect("valid permutation");
        let stab = perm_stabilizes(&ideal, sigma).expect("valid permutation");
        if star {
            star_count += 1;
        }
        if stab {
            stab_count += 1;
        }
        if star != stab {
            coincide = false;
        }
    });
    Ok((star_count, stab_count, coincide))
}

/// Heap's algorithm; calls `f` on every permutation of the slice.
pub fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// The identity sum_{M < F < L} N_{L/F} = p + N_{L/M} in Z[(Z/p)^2], with M
/// the base field (sum over the p+1 subgroups of order p).
pub fn noncyclic_norm_identity(p: usize) -> Result<bool> {
    if prime_divisors(p as u64) != vec![p as u64] {
        return Err(Error::Precondition("p must be prime".into()));
    }
    let group = FiniteGroup::product_of_cyclics(p, p)?;
    let mut lhs = GroupRingElement::zero(&group);
    let mut count = 0usize;
    for sub in group.all_subgroups() {
        if sub.len() == p {
            let h = SubgroupDescriptor::new(&group, &sub)?;
            lhs = lhs.add(&norm_element(&group, &h));
            count += 1;
        }
    }
    let full = SubgroupDescriptor::new(&group, &(0..group.order()).collect::<Vec<_>>())?;
    let mut rhs = norm_element(&group, &full);
    rhs.coeffs[group.identity()] += BigInt::from(p as i64);
    Ok(count == p + 1 && lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclopoly::IntPoly;
    use crate::exactlinalg::{index_in, intersect, Index};

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_group_basics() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.element_order(1), 6);
        assert_eq!(g.element_order(2), 3);
        assert!(g.is_abelian());
        assert!(g.is_cyclic());
    }

    #[test]
    fn dihedral_basics() {
        let g = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // reflection at index 3 (j=1, i=0) has order 2
        assert_eq!(g.element_order(3), 2);
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn semidirect_rejects_bad_action() {
        // exponent 2 has order 4 mod 5? 2^2=4, not an order-2 action
        assert!(FiniteGroup::semidirect(5, 2, 2).is_err());
        assert!(FiniteGroup::semidirect(5, 2, 4).is_ok());
    }

    #[test]
    fn norm_element_examples() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let h = SubgroupDescriptor::new(&g, &[0, 2]).unwrap();
        assert_eq!(norm_element(&g, &h).coeffs(), v(&[1, 0, 1, 0]).as_slice());

        let h1 = SubgroupDescriptor::new(&g, &[0]).unwrap();
        assert_eq!(norm_element(&g, &h1).coeffs(), v(&[1, 0, 0, 0]).as_slice());

        let k = FiniteGroup::product_of_cyclics(2, 2).unwrap();
        let all = SubgroupDescriptor::new(&k, &[0, 1, 2, 3]).unwrap();
        assert_eq!(norm_element(&k, &all).coeffs(), v(&[1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn subgroup_descriptor_rejects_unclosed() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert!(SubgroupDescriptor::new(&g, &[0, 1]).is_err());
        assert!(SubgroupDescriptor::new(&g, &[1, 3]).is_err());
    }

    #[test]
    fn cyclic_twist_ideal_r2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap();
        assert_eq!(i.rank(), 1);
        assert!(i.lattice().contains(&v(&[-1, 1]))); // tau - 1
        assert!(i.is_saturated());
        assert!(i.is_right_ideal());
    }

    #[test]
    fn cyclic_twist_ideal_r1() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap();
        assert_eq!(i.rank(), 1); // the full ring Z
        assert_eq!(i.lattice(), &Lattice::full(1));
    }

    #[test]
    fn cyclic_twist_ideal_r6_annihilator() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap();
        assert_eq!(i.rank(), 2);
        assert!(i.is_saturated());
        let ann = annihilator(&i);
        let phi_tau = poly_at_element(&g, &cyclopoly::cyclotomic(6), g.tau());
        let phi_ideal = GroupRingIdeal::principal_right(&g, &phi_tau);
        assert_eq!(ann.lattice(), phi_ideal.lattice());
    }

    #[test]
    fn annihilator_examples() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap();
        let ann = annihilator(&i);
        assert_eq!(ann.rank(), 1);
        assert!(ann.lattice().contains(&v(&[1, 1]))); // 1 + tau

        assert_eq!(annihilator(&GroupRingIdeal::full(&g)).rank(), 0);
        assert_eq!(annihilator(&GroupRingIdeal::zero(&g)).rank(), 2);
    }

    #[test]
    fn double_annihilator() {
        for r in 1..=30usize {
            let g = FiniteGroup::cyclic(r).unwrap();
            let i = cyclic_twist_ideal(&g).unwrap();
            assert!(double_annihilator_check(&i), "r = {r}");
        }
        // non-saturated ideal: 2 Z[G] fails
        let g = FiniteGroup::cyclic(3).unwrap();
        let two = GroupRingElement::basis_element(&g, 0).scale(&BigInt::from(2));
        let i2 = GroupRingIdeal::principal_right(&g, &two);
        assert!(!i2.is_saturated());
        assert!(!double_annihilator_check(&i2));
        // zero ideal is fine
        assert!(double_annihilator_check(&GroupRingIdeal::zero(&g)));
    }

    #[test]
    fn isotypic_ideal_cyclic2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        // F = L: kernel subgroup trivial
        let triv = SubgroupDescriptor::new(&g, &[0]).unwrap();
        let i_l = isotypic_ideal(&g, &triv).unwrap();
        assert_eq!(i_l.lattice(), cyclic_twist_ideal(&g).unwrap().lattice());
        // F = k: kernel subgroup all of G; N_G generates it
        let all = SubgroupDescriptor::new(&g, &[0, 1]).unwrap();
        let i_k = isotypic_ideal(&g, &all).unwrap();
        assert!(i_k.lattice().contains(&v(&[1, 1])));
        assert_eq!(i_k.rank(), 1);
    }

    #[test]
    fn isotypic_decomposition_cyclic6() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let mut ranks = Vec::new();
        let mut stacked: Vec<Vec<BigInt>> = Vec::new();
        for sub in g.all_subgroups() {
            let h = SubgroupDescriptor::new(&g, &sub).unwrap();
            let i = isotypic_ideal(&g, &h).unwrap();
            ranks.push(i.rank());
            for r in 0..i.rank() {
                stacked.push(i.lattice().basis().row(r).to_vec());
            }
        }
        ranks.sort_unstable();
        assert_eq!(ranks, vec![1, 1, 2, 2]);
        let sum = lattice_from_rows(6, stacked);
        let idx = index_in(&sum, &Lattice::full(6)).unwrap();
        assert!(matches!(idx, Index::Finite(_)));
    }

    #[test]
    fn isotypic_pairwise_zero_intersection() {
        let g = FiniteGroup::product_of_cyclics(2, 2).unwrap();
        let mut ideals = Vec::new();
        for sub in g.all_subgroups() {
            let h = SubgroupDescriptor::new(&g, &sub).unwrap();
            if let Ok(i) = isotypic_ideal(&g, &h) {
                ideals.push(i);
            }
        }
        // (Z/2)^2 has cyclic quotients by: G itself (trivial rep) and the
        // three order-2 subgroups; the trivial subgroup gives quotient
        // (Z/2)^2, not cyclic
        assert_eq!(ideals.len(), 4);
        for a in 0..ideals.len() {
            for b in a + 1..ideals.len() {
                assert!(intersect(ideals[a].lattice(), ideals[b].lattice()).is_zero());
            }
        }
    }

    #[test]
    fn isotypic_rejects_noncyclic_quotient() {
        let g = FiniteGroup::product_of_cyclics(2, 2).unwrap();
        let triv = SubgroupDescriptor::new(&g, &[0]).unwrap();
        assert!(isotypic_ideal(&g, &triv).is_err());
    }

    #[test]
    fn hat_dual_examples() {
        let g = FiniteGroup::cyclic(2).unwrap();
        // full ring: rank |G|
        let full = GroupRingIdeal::full(&g);
        let dual = hat_dual(&full);
        assert_eq!(dual.rank(), 2);
        // I_L for r=2: rank 1, tau acts by -1
        let i = cyclic_twist_ideal(&g).unwrap();
        let d = hat_dual(&i);
        assert_eq!(d.rank(), 1);
        assert_eq!(d.action(1).at(0, 0), &BigInt::from(-1));
        // zero
        let z = hat_dual(&GroupRingIdeal::zero(&g));
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn norm_generators_small() {
        for r in [1usize, 2, 3, 4, 6, 12] {
            let g = FiniteGroup::cyclic(r).unwrap();
            assert!(norm_generators_equal_annihilator(&g).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn semidirect_twist_dihedral3() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let j = semidirect_twist_ideal(&g).unwrap();
        assert_eq!(j.rank(), 2);
        assert!(j.is_saturated());
        assert!(j.is_right_ideal());
        let m = semidirect_norm_map_matrix(&g).unwrap();
        assert!(crate::exactlinalg::is_unimodular(&m));
    }

    #[test]
    fn semidirect_twist_trivial_h() {
        let g = FiniteGroup::semidirect(5, 1, 1).unwrap();
        let j = semidirect_twist_ideal(&g).unwrap();
        let gamma = FiniteGroup::cyclic(5).unwrap();
        let inner = cyclic_twist_ideal(&gamma).unwrap();
        assert_eq!(j.lattice(), inner.lattice());
    }

    #[test]
    fn perm_translations_satisfy_star() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let i = cyclic_twist_ideal(&g).unwrap();
        for t in 0..6 {
            let sigma: Vec<usize> = (0..6).map(|x| g.mul(t, x)).collect();
            assert!(perm_condition_star(&g, &sigma).unwrap());
            assert!(perm_stabilizes(&i, &sigma).unwrap());
        }
    }

    #[test]
    fn perm_scan_cyclic4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let (star, stab, coincide) = permutation_scan(&g).unwrap();
        assert!(coincide, "condition (*) and stabilization must coincide");
        assert_eq!(star, stab);
    }

    #[test]
    fn perm_rejects_non_bijection() {
        let g = FiniteGroup::cyclic(3).unwrap();
        assert!(perm_condition_star(&g, &[0, 0, 1]).is_err());
    }

    #[test]
    fn noncyclic_identity() {
        assert!(noncyclic_norm_identity(2).unwrap());
        assert!(noncyclic_norm_identity(3).unwrap());
        assert!(noncyclic_norm_identity(5).unwrap());
        assert!(noncyclic_norm_identity(4).is_err());
    }

    #[test]
    fn rank_is_phi_r() {
        for r in 1..=30usize {
            let g = FiniteGroup::cyclic(r).unwrap();
            let i = cyclic_twist_ideal(&g).unwrap();
            assert_eq!(i.rank() as u64, euler_phi(r as u64), "r = {r}");
            assert!(i.is_saturated(), "r = {r}");
        }
    }

    #[test]
    fn image_index_in_cyclotomic_quotient() {
        // Z[G]/I_L^perp = Z[x]/Phi_r; the image of I_L has index
        // prod_{l | r} l^(phi(r)/(l-1)), independently the norm of
        // prod (zeta_l - 1)
        for r in 2..=12u64 {
            let g = FiniteGroup::cyclic(r as usize).unwrap();
            let i = cyclic_twist_ideal(&g).unwrap();
            let phi = cyclopoly::cyclotomic(r);
            let m = phi.degree();
            let mut rows = Vec::new();
            for b in 0..i.rank() {
                let poly = IntPoly::from_coeffs(i.lattice().basis().row(b).to_vec());
                rows.push(reduce_mod(&poly, &phi, m));
            }
            let image = lattice_from_rows(m, rows);
            let idx = index_in(&image, &Lattice::full(m)).unwrap();
            let mut expected = BigInt::one();
            for l in prime_divisors(r) {
                let e = euler_phi(r) / (l - 1);
                expected *= BigInt::from(l).pow(e as u32);
            }
            assert_eq!(idx, Index::Finite(expected), "r = {r}");
        }
    }

    fn reduce_mod(p: &IntPoly, modulus: &IntPoly, m: usize) -> Vec<BigInt> {
        let mut rem = p.clone();
        while !rem.is_zero() && rem.degree() >= modulus.degree() {
            let shift = rem.degree() - modulus.degree();
            let lead = rem.coeffs().last().unwrap().clone();
            let mut sub = vec![BigInt::zero(); shift];
            sub.push(lead);
            rem = rem.sub(&modulus.mul(&IntPoly::from_coeffs(sub)));
        }
        let mut out = vec![BigInt::zero(); m];
        for (i, c) in rem.coeffs().iter().enumerate() {
            out[i] = c.clone();
        }
        out
    }
}
