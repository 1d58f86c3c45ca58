//! Subgroups of `Q^n` of the form `V + M` with `V` a rational subspace and
//! `M` a finitely generated lattice.
//!
//! This class of subgroups is closed under sum, intersection, image and
//! preimage along rational matrices, which is exactly what kernel and
//! cokernel computations on Q/Z-module presentations need. The groups that
//! occur in practice are the two extreme cases (a pure lattice, or all of
//! `Q^n`) together with restriction kernels, which genuinely mix a divisible
//! part with a finite cyclic direction.
//!
//! The canonical form stored here makes equality of subgroups a literal
//! comparison: the subspace is in reduced column echelon form, the lattice
//! generators are reduced modulo the subspace (zeros at its pivot rows) and
//! then put in Hermite form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::mat::{Int, Rat, RatMat};

/// A finitely generated plus divisible subgroup of `Q^n`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSubgroup {
    dim: usize,
    subspace: RatMat, // n x a, reduced column echelon
    lattice: RatMat,  // n x b, reduced mod subspace, Hermite form, full column rank
}

/// Structure of a quotient `sup / sub` of two subgroups with `sub` contained
/// in `sup`.
#[derive(Clone, Debug)]
pub enum QuotientStructure {
    Trivial,
    /// Finite quotient: invariant factors (all > 1, divisibility chain) and
    /// generator lifts, one column per factor.
    Finite { factors: Vec<Int>, lifts: RatMat },
    /// The quotient contains an element of infinite order or a divisible
    /// direction; `witness` is an element of `sup` not in `sub` whose class
    /// demonstrates it.
    Infinite { witness: Vec<Rat> },
}

impl QuotientStructure {
    pub fn is_trivial(&self) -> bool {
        matches!(self, QuotientStructure::Trivial)
    }

    pub fn order(&self) -> Option<Int> {
        match self {
            QuotientStructure::Trivial => Some(Int::one()),
            QuotientStructure::Finite { factors, .. } => {
                Some(factors.iter().fold(Int::one(), |a, d| a * d))
            }
            QuotientStructure::Infinite { .. } => None,
        }
    }

    pub fn invariant_factors(&self) -> Vec<Int> {
        match self {
            QuotientStructure::Trivial => Vec::new(),
            QuotientStructure::Finite { factors, .. } => factors.clone(),
            QuotientStructure::Infinite { .. } => Vec::new(),
        }
    }

    /// A nontrivial coset representative, if the quotient is nontrivial.
    pub fn nontrivial_element(&self) -> Option<Vec<Rat>> {
        match self {
            QuotientStructure::Trivial => None,
            QuotientStructure::Finite { lifts, .. } => Some(lifts.col_vec(0)),
            QuotientStructure::Infinite { witness } => Some(witness.clone()),
        }
    }
}

impl QSubgroup {
    pub fn zero(dim: usize) -> Self {
        QSubgroup { dim, subspace: RatMat::zeros(dim, 0), lattice: RatMat::zeros(dim, 0) }
    }

    pub fn full(dim: usize) -> Self {
        QSubgroup { dim, subspace: RatMat::identity(dim), lattice: RatMat::zeros(dim, 0) }
    }

    pub fn standard_lattice(dim: usize) -> Self {
        Self::from_lattice(&RatMat::identity(dim))
    }

    pub fn from_lattice(gens: &RatMat) -> Self {
        Self::from_parts(&RatMat::zeros(gens.rows(), 0), gens)
    }

    pub fn from_subspace(gens: &RatMat) -> Self {
        Self::from_parts(gens, &RatMat::zeros(gens.rows(), 0))
    }

    /// Canonicalize a subgroup generated by a subspace part (divisible) and
    /// a lattice part (integer combinations of the columns).
    pub fn from_parts(subspace_gens: &RatMat, lattice_gens: &RatMat) -> Self {
        assert_eq!(subspace_gens.rows(), lattice_gens.rows());
        let dim = subspace_gens.rows();
        let subspace = subspace_gens.col_space_basis();
        let pivots = subspace_pivots(&subspace);
        // reduce lattice generators modulo the subspace: zero out pivot rows
        let reduced_cols: Vec<Vec<Rat>> = (0..lattice_gens.cols())
            .map(|j| reduce_mod_subspace(&subspace, &pivots, &lattice_gens.col_vec(j)))
            .collect();
        let reduced = RatMat::from_cols(dim, &reduced_cols);
        let lattice = reduced.lattice_hnf();
        QSubgroup { dim, subspace, lattice }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn subspace(&self) -> &RatMat {
        &self.subspace
    }

    pub fn lattice_part(&self) -> &RatMat {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.subspace.cols() == 0 && self.lattice.cols() == 0
    }

    pub fn is_full_space(&self) -> bool {
        self.subspace.cols() == self.dim
    }

    /// True if the group is a plain lattice (no divisible part).
    pub fn is_lattice(&self) -> bool {
        self.subspace.cols() == 0
    }

    /// Dimension of the rational span.
    pub fn span_dim(&self) -> usize {
        self.subspace.cols() + self.lattice.cols()
    }

    /// Canonical basis of the rational span.
    pub fn span(&self) -> RatMat {
        RatMat::hcat(&[&self.subspace, &self.lattice]).col_space_basis()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        let pivots = subspace_pivots(&self.subspace);
        let r = reduce_mod_subspace(&self.subspace, &pivots, v);
        self.lattice.lattice_contains(&r)
    }

    pub fn subgroup_of(&self, other: &QSubgroup) -> bool {
        assert_eq!(self.dim, other.dim);
        for j in 0..self.subspace.cols() {
            // a subspace generator must lie in the other subspace, not just
            // in the group: divisible parts map into divisible parts
            if other.subspace.solve_vec(&self.subspace.col_vec(j)).is_none() {
                return false;
            }
        }
        (0..self.lattice.cols()).all(|j| other.contains(&self.lattice.col_vec(j)))
    }

    pub fn sum(&self, other: &QSubgroup) -> QSubgroup {
        assert_eq!(self.dim, other.dim);
        QSubgroup::from_parts(
            &RatMat::hcat(&[&self.subspace, &other.subspace]),
            &RatMat::hcat(&[&self.lattice, &other.lattice]),
        )
    }

    /// Image under a rational matrix (the result lives in `Q^{a.rows()}`).
    pub fn image(&self, a: &RatMat) -> QSubgroup {
        assert_eq!(a.cols(), self.dim);
        QSubgroup::from_parts(&a.mul(&self.subspace), &a.mul(&self.lattice))
    }

    /// Intersection, via the joint solution group of the two generating maps.
    pub fn intersect(&self, other: &QSubgroup) -> QSubgroup {
        assert_eq!(self.dim, other.dim);
        let s1 = &self.subspace;
        let b1 = &self.lattice;
        let s2 = &other.subspace;
        let b2 = &other.lattice;
        let system = RatMat::hcat(&[s1, b1, &s2.neg(), &b2.neg()]);
        // v = [S1 B1 0 0] * z
        let mut out = RatMat::zeros(self.dim, system.cols());
        for j in 0..s1.cols() {
            for i in 0..self.dim {
                out.set(i, j, s1.at(i, j).clone());
            }
        }
        for j in 0..b1.cols() {
            for i in 0..self.dim {
                out.set(i, s1.cols() + j, b1.at(i, j).clone());
            }
        }
        let int_rows: Vec<usize> = (s1.cols()..s1.cols() + b1.cols())
            .chain(s1.cols() + b1.cols() + s2.cols()..system.cols())
            .collect();
        constrained_image(&system, &out, &int_rows)
    }

    /// Preimage `{x : a * x in self}`, a subgroup of the domain space.
    pub fn preimage(&self, a: &RatMat) -> QSubgroup {
        assert_eq!(a.rows(), self.dim);
        let k = a.cols();
        let system = RatMat::hcat(&[a, &self.subspace.neg(), &self.lattice.neg()]);
        let mut out = RatMat::zeros(k, system.cols());
        for j in 0..k {
            out.set(j, j, Rat::one());
        }
        let int_rows: Vec<usize> = (k + self.subspace.cols()..system.cols()).collect();
        constrained_image(&system, &out, &int_rows)
    }

    /// Structure of `self / sub`; requires `sub` to be a subgroup of `self`.
    pub fn quotient_by(&self, sub: &QSubgroup) -> QuotientStructure {
        assert_eq!(self.dim, sub.dim);
        debug_assert!(sub.subgroup_of(self), "quotient_by requires containment");
        if self.subspace.cols() != sub.subspace.cols() {
            // a divisible direction survives; some rational multiple of a
            // subspace generator witnesses nontriviality
            for j in 0..self.subspace.cols() {
                let s = self.subspace.col_vec(j);
                if sub.subspace.solve_vec(&s).is_some() {
                    continue;
                }
                return QuotientStructure::Infinite { witness: shrink_out_of(&s, sub) };
            }
            unreachable!("subspace dimensions differ but all generators matched");
        }
        // common divisible part: compare lattice parts in the complement
        let sub_lat = &sub.lattice;
        if sub_lat.cols() < self.lattice.cols() {
            // free rank survives: a lattice generator with no rational
            // multiple inside the subgroup's span witnesses it
            let span = RatMat::hcat(&[&sub.subspace, sub_lat]);
            for j in 0..self.lattice.cols() {
                let g = self.lattice.col_vec(j);
                if span.solve_vec(&g).is_none() {
                    return QuotientStructure::Infinite { witness: g };
                }
            }
            unreachable!("rank deficit without a free witness");
        }
        if self.lattice.cols() == 0 {
            return QuotientStructure::Trivial;
        }
        let c = self
            .lattice
            .solve(sub_lat)
            .expect("contained lattice must be expressible in the basis");
        let c = c.to_int().expect("containment gives integral coordinates");
        let snf = c.snf();
        let n = c.rows();
        let factors: Vec<Int> = (0..n).map(|i| snf.d.at(i, i).clone()).collect();
        if factors.iter().any(|f| f.is_zero()) {
            let u_inv = snf.u.to_rat().inverse().expect("unimodular");
            let lifts = self.lattice.mul(&u_inv);
            let bad = factors.iter().position(|f| f.is_zero()).unwrap();
            return QuotientStructure::Infinite { witness: lifts.col_vec(bad) };
        }
        let keep: Vec<usize> = (0..n).filter(|&i| factors[i] > Int::one()).collect();
        if keep.is_empty() {
            return QuotientStructure::Trivial;
        }
        let u_inv = snf.u.to_rat().inverse().expect("unimodular");
        let lifts_all = self.lattice.mul(&u_inv);
        let cols: Vec<Vec<Rat>> = keep.iter().map(|&i| lifts_all.col_vec(i)).collect();
        QuotientStructure::Finite {
            factors: keep.iter().map(|&i| factors[i].clone()).collect(),
            lifts: RatMat::from_cols(self.dim, &cols),
        }
    }

    /// Index `[self : sub]` when finite.
    pub fn index_of(&self, sub: &QSubgroup) -> Option<Int> {
        self.quotient_by(sub).order()
    }

    /// Generators of the group: subspace columns first, then lattice columns.
    pub fn generators(&self) -> Vec<Vec<Rat>> {
        let mut g: Vec<Vec<Rat>> = Vec::new();
        for j in 0..self.subspace.cols() {
            g.push(self.subspace.col_vec(j));
        }
        for j in 0..self.lattice.cols() {
            g.push(self.lattice.col_vec(j));
        }
        g
    }
}

fn subspace_pivots(subspace: &RatMat) -> Vec<usize> {
    // reduced column echelon: pivot row of column j = first nonzero row
    (0..subspace.cols())
        .map(|j| (0..subspace.rows()).find(|&i| !subspace.at(i, j).is_zero()).unwrap())
        .collect()
}

fn reduce_mod_subspace(subspace: &RatMat, pivots: &[usize], v: &[Rat]) -> Vec<Rat> {
    let mut r = v.to_vec();
    for (j, &p) in pivots.iter().enumerate() {
        if !r[p].is_zero() {
            let f = r[p].clone();
            for i in 0..r.len() {
                let x = &r[i] - &f * subspace.at(i, j);
                r[i] = x;
            }
        }
    }
    r
}

/// A small rational multiple of `s` that escapes `sub` (valid when `s` does
/// not lie in `sub`'s divisible part).
fn shrink_out_of(s: &[Rat], sub: &QSubgroup) -> Vec<Rat> {
    if !sub.contains(s) {
        return s.to_vec();
    }
    let pivots = subspace_pivots(&sub.subspace);
    let reduced = reduce_mod_subspace(&sub.subspace, &pivots, s);
    let x = sub.lattice.solve_vec(&reduced).expect("contained element must be expressible");
    let mut denom = Int::one();
    let mut maxnum = Int::one();
    for c in &x {
        denom = num_integer::lcm(denom.clone(), c.denom().clone());
        if c.numer().abs() > maxnum {
            maxnum = c.numer().abs();
        }
    }
    let scale = Rat::new(Int::one(), &denom * (BigInt::from(2) * maxnum + 1));
    let out: Vec<Rat> = s.iter().map(|v| v * &scale).collect();
    debug_assert!(!sub.contains(&out));
    out
}

/// Core solver: the set `{out * z : m * z = 0, z_i integral for i in
/// int_rows}` as a subgroup of `Q^{out.rows()}`.
fn constrained_image(m: &RatMat, out: &RatMat, int_rows: &[usize]) -> QSubgroup {
    let null = m.kernel(); // K x nu
    let y = null.row_slice(int_rows); // |I| x nu
    // integral points of the projected span
    let y_int = {
        let (scaled, _) = y.col_space_basis().scale_to_int();
        scaled.saturation()
    };
    // lift each integral point back through the kernel
    let mut lattice_cols: Vec<Vec<Rat>> = Vec::new();
    for j in 0..y_int.cols() {
        let target: Vec<Rat> =
            (0..y_int.rows()).map(|i| Rat::from_integer(y_int.at(i, j).clone())).collect();
        let c = y.solve_vec(&target).expect("integral point lies in the projected span");
        let z = null.mul(&RatMat::from_col(&c));
        lattice_cols.push(out.mul(&z).col_vec(0));
    }
    // solutions with zero integral part form the divisible direction
    let yk = y.kernel();
    let subspace = out.mul(&null.mul(&yk));
    QSubgroup::from_parts(&subspace, &RatMat::from_cols(out.rows(), &lattice_cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{int, rat, rat_int};

    fn q(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn lat(cols: &[Vec<Rat>], dim: usize) -> QSubgroup {
        QSubgroup::from_lattice(&RatMat::from_cols(dim, cols))
    }

    #[test]
    fn canonical_form_identifies_equal_groups() {
        // (1/2,0),(0,1/2),(1/2,1/2) generate the same lattice as the first two
        let g1 = lat(&[q(&[(1, 2), (0, 1)]), q(&[(0, 1), (1, 2)]), q(&[(1, 2), (1, 2)])], 2);
        let g2 = lat(&[q(&[(1, 2), (0, 1)]), q(&[(0, 1), (1, 2)])], 2);
        assert_eq!(g1, g2);
    }

    #[test]
    fn mixed_canonical_form() {
        // Q x (1/2)Z given with redundant generators
        let s = RatMat::from_cols(2, &[q(&[(3, 7), (0, 1)])]);
        let b = RatMat::from_cols(2, &[q(&[(5, 1), (1, 2)]), q(&[(0, 1), (1, 1)])]);
        let g = QSubgroup::from_parts(&s, &b);
        assert_eq!(g.subspace().cols(), 1);
        assert_eq!(g.lattice_part().cols(), 1);
        assert!(g.lattice_part().at(0, 0).is_zero());
        assert!(g.contains(&q(&[(9, 13), (1, 2)])));
        assert!(!g.contains(&q(&[(0, 1), (1, 4)])));
    }

    #[test]
    fn membership_full_and_zero() {
        let f = QSubgroup::full(2);
        assert!(f.contains(&q(&[(22, 7), (-3, 5)])));
        let z = QSubgroup::zero(2);
        assert!(z.contains(&q(&[(0, 1), (0, 1)])));
        assert!(!z.contains(&q(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn sum_and_intersection_of_lattices() {
        let z2 = QSubgroup::standard_lattice(2);
        let half_diag = lat(&[q(&[(1, 2), (1, 2)])], 2);
        let s = z2.sum(&half_diag);
        assert!(z2.subgroup_of(&s));
        assert_eq!(s.index_of(&z2), Some(int(2)));
        let i = z2.intersect(&half_diag);
        assert!(i.contains(&q(&[(1, 1), (1, 1)])));
        assert!(!i.contains(&q(&[(1, 2), (1, 2)])));
    }

    #[test]
    fn intersection_of_mixed_groups_can_be_a_lattice() {
        // {v : v_1 in Z} intersected with {v : v_0 in Z} is Z^2
        let g1 = QSubgroup::from_parts(
            &RatMat::from_cols(2, &[q(&[(1, 1), (0, 1)])]),
            &RatMat::from_cols(2, &[q(&[(0, 1), (1, 1)])]),
        );
        let g2 = QSubgroup::from_parts(
            &RatMat::from_cols(2, &[q(&[(0, 1), (1, 1)])]),
            &RatMat::from_cols(2, &[q(&[(1, 1), (0, 1)])]),
        );
        let i = g1.intersect(&g2);
        assert!(i.is_lattice());
        assert_eq!(i, QSubgroup::standard_lattice(2));
    }

    #[test]
    fn preimage_of_lattice_is_mixed() {
        // {v in Q^2 : 2 v_0 + 4 v_1 in Z}
        let row = RatMat::from_fn(1, 2, |_, j| if j == 0 { rat_int(2) } else { rat_int(4) });
        let z = QSubgroup::standard_lattice(1);
        let pre = z.preimage(&row);
        assert_eq!(pre.dim(), 2);
        assert_eq!(pre.subspace().cols(), 1);
        assert!(pre.contains(&q(&[(1, 2), (0, 1)])));
        assert!(!pre.contains(&q(&[(1, 4), (0, 1)])));
        // the kernel direction is fully divisible
        assert!(pre.contains(&q(&[(2, 3), (-1, 3)])));
    }

    #[test]
    fn quotient_structures() {
        let z2 = QSubgroup::standard_lattice(2);
        let two_z2 = lat(&[q(&[(2, 1), (0, 1)]), q(&[(0, 1), (2, 1)])], 2);
        match z2.quotient_by(&two_z2) {
            QuotientStructure::Finite { factors, .. } => {
                assert_eq!(factors, vec![int(2), int(2)]);
            }
            other => panic!("expected finite, got {:?}", other),
        }
        assert!(z2.quotient_by(&z2).is_trivial());
        let full = QSubgroup::full(2);
        match full.quotient_by(&z2) {
            QuotientStructure::Infinite { witness } => {
                assert!(full.contains(&witness));
                assert!(!z2.contains(&witness));
            }
            other => panic!("expected infinite, got {:?}", other),
        }
    }

    #[test]
    fn quotient_of_full_by_mixed_detects_divisible_witness() {
        // (Q x Q) / (Q x Z) is divisible and nontrivial
        let g = QSubgroup::from_parts(
            &RatMat::from_cols(2, &[q(&[(1, 1), (0, 1)])]),
            &RatMat::from_cols(2, &[q(&[(0, 1), (1, 1)])]),
        );
        let full = QSubgroup::full(2);
        match full.quotient_by(&g) {
            QuotientStructure::Infinite { witness } => {
                assert!(!g.contains(&witness));
            }
            other => panic!("expected infinite, got {:?}", other),
        }
    }

    #[test]
    fn image_collapses_into_subspace() {
        let g = QSubgroup::from_parts(
            &RatMat::from_cols(2, &[q(&[(1, 1), (0, 1)])]),
            &RatMat::from_cols(2, &[q(&[(0, 1), (1, 1)])]),
        );
        // projection onto the divisible coordinate
        let p = RatMat::from_fn(1, 2, |_, j| if j == 0 { rat_int(1) } else { rat_int(0) });
        let img = g.image(&p);
        assert!(img.is_full_space());
    }

    #[test]
    fn galois_identities() {
        let g1 = lat(&[q(&[(1, 2), (0, 1)]), q(&[(0, 1), (1, 3)])], 2);
        let g2 = lat(&[q(&[(1, 3), (0, 1)]), q(&[(0, 1), (1, 2)])], 2);
        let meet = g1.intersect(&g2);
        let join = g1.sum(&g2);
        assert!(meet.subgroup_of(&g1));
        assert!(meet.subgroup_of(&g2));
        assert!(g1.subgroup_of(&join));
        assert!(g2.subgroup_of(&join));
        assert_eq!(g1.sum(&meet), g1);
        assert_eq!(g1.intersect(&join), g1);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

        #[test]
        fn index_multiplicative_on_chains(
            d1 in 1i64..4,
            d2 in 1i64..4,
            x in -2i64..3,
        ) {
            // W = Z^2, L' = <(d1,0),(x,1)>, L = <(d1,0),(x d2, d2)>
            let w = QSubgroup::standard_lattice(2);
            let lp = lat(&[q(&[(d1, 1), (0, 1)]), q(&[(x, 1), (1, 1)])], 2);
            let l = lat(&[q(&[(d1, 1), (0, 1)]), q(&[(x * d2, 1), (d2, 1)])], 2);
            let i_wl = w.index_of(&l).unwrap();
            let i_wlp = w.index_of(&lp).unwrap();
            let i_lpl = lp.index_of(&l).unwrap();
            proptest::prop_assert_eq!(i_wl, i_wlp * i_lpl);
        }
    }
}
