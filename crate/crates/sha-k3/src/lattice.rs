//! Integral lattices with symmetric bilinear forms and the operations the
//! rest of the crate is built from: normal forms, dual lattices,
//! discriminant groups, orthogonal complements, saturation and divisibility.
//!
//! Lattices are plain values identified by their data; degenerate forms are
//! representable but rejected by every operation that needs the form to be
//! nondegenerate.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mat::{gcd_slice, lattice_quotient, Int, IntMat, Rat, RatMat, Snf};

/// Free module of finite rank with an integer Gram matrix, optionally
/// embedded in an ambient lattice by a rational basis matrix
/// (one basis vector per column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    rank: usize,
    gram: IntMat,
    basis_in_ambient: Option<RatMat>,
    det: Int,
}

impl IntLattice {
    pub fn new(gram: IntMat) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NonSymmetricGram);
        }
        let det = gram.det();
        Ok(IntLattice { rank: gram.rows(), gram, basis_in_ambient: None, det })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMat::from_rows(rows))
    }

    /// Lattice spanned inside `ambient` by the columns of `basis`; the Gram
    /// matrix is computed from the ambient pairing and must be integral.
    pub fn sublattice_of(ambient: &IntLattice, basis: &RatMat) -> Result<Self> {
        if basis.rows() != ambient.rank {
            return Err(Error::Dimension(format!(
                "basis has {} rows, ambient rank is {}",
                basis.rows(),
                ambient.rank
            )));
        }
        let g = basis.transpose().mul(&ambient.gram.to_rat()).mul(basis);
        let gram = g.to_int().ok_or_else(|| {
            Error::NotASublattice("induced pairing is not integral".into())
        })?;
        let mut l = IntLattice::new(gram)?;
        l.basis_in_ambient = Some(basis.clone());
        Ok(l)
    }

    /// Attach an ambient basis, checking that it reproduces the Gram matrix.
    pub fn with_basis(gram: IntMat, basis: RatMat, ambient: &IntLattice) -> Result<Self> {
        let l = Self::sublattice_of(ambient, &basis)?;
        if l.gram != gram {
            return Err(Error::EmbeddingMismatch);
        }
        Ok(l)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn det(&self) -> &Int {
        &self.det
    }

    pub fn is_degenerate(&self) -> bool {
        self.det.is_zero()
    }

    pub fn basis_in_ambient(&self) -> Option<&RatMat> {
        self.basis_in_ambient.as_ref()
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateForm)
        } else {
            Ok(())
        }
    }

    /// Signature (positive, negative) of the form, by symmetric
    /// diagonalization over Q. Requires a nondegenerate form.
    pub fn signature(&self) -> Result<(usize, usize)> {
        self.require_nondegenerate()?;
        let n = self.rank;
        let mut a = self.gram.to_rat();
        let (mut pos, mut neg) = (0usize, 0usize);
        let mut used = vec![false; n];
        for _ in 0..n {
            // pick an unused index with nonzero diagonal, fixing one up if needed
            let mut idx = (0..n).find(|&i| !used[i] && !a.at(i, i).is_zero());
            if idx.is_none() {
                'fix: for i in 0..n {
                    if used[i] {
                        continue;
                    }
                    for j in 0..n {
                        if !used[j] && j != i && !a.at(i, j).is_zero() {
                            // add row/col j into i to create a nonzero diagonal
                            for k in 0..n {
                                let v = a.at(i, k) + a.at(j, k);
                                a.set(i, k, v);
                            }
                            for k in 0..n {
                                let v = a.at(k, i) + a.at(k, j);
                                a.set(k, i, v);
                            }
                            idx = Some(i);
                            break 'fix;
                        }
                    }
                }
            }
            let Some(i) = idx else { break };
            used[i] = true;
            if a.at(i, i).is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let d = a.at(i, i).clone();
            for r in 0..n {
                if used[r] || a.at(r, i).is_zero() {
                    continue;
                }
                let f = a.at(r, i) / &d;
                for k in 0..n {
                    let v = a.at(r, k) - &f * a.at(i, k);
                    a.set(r, k, v);
                }
                for k in 0..n {
                    let v = a.at(k, r) - &f * a.at(k, i);
                    a.set(k, r, v);
                }
            }
        }
        Ok((pos, neg))
    }
}

/// Finite abelian group in invariant-factor form, together with coset
/// representatives of the generators in the enclosing coordinate space.
/// Factors are all at least 2 and form a divisibility chain; the trivial
/// group is the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    invariant_factors: Vec<Int>,
    generator_lifts: RatMat,
}

impl FinAbGroup {
    pub fn trivial(dim: usize) -> Self {
        FinAbGroup { invariant_factors: Vec::new(), generator_lifts: RatMat::zeros(dim, 0) }
    }

    /// Structure of `sup / sub` for lattices of equal rational span.
    pub fn from_lattice_quotient(sup: &RatMat, sub: &RatMat) -> Result<Self> {
        let (factors, lifts) = lattice_quotient(sup, sub).ok_or(Error::NotPresentable)?;
        let keep: Vec<usize> =
            (0..factors.len()).filter(|&i| factors[i] > Int::one()).collect();
        let invariant_factors: Vec<Int> = keep.iter().map(|&i| factors[i].clone()).collect();
        let cols: Vec<Vec<Rat>> = keep.iter().map(|&i| lifts.col_vec(i)).collect();
        Ok(FinAbGroup {
            invariant_factors,
            generator_lifts: RatMat::from_cols(sup.rows(), &cols),
        })
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn generator_lifts(&self) -> &RatMat {
        &self.generator_lifts
    }

    pub fn order(&self) -> Int {
        self.invariant_factors.iter().fold(Int::one(), |a, d| a * d)
    }

    pub fn exponent(&self) -> Int {
        self.invariant_factors.last().cloned().unwrap_or_else(Int::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.invariant_factors.iter().map(|d| format!("Z/{}", d)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Smith and Hermite normal forms of an integer matrix in one call.
pub struct NormalForms {
    pub snf: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub hnf: IntMat,
}

pub fn normal_forms(m: &IntMat) -> NormalForms {
    let Snf { d, u, v } = m.snf();
    let (hnf, _) = m.hnf_col();
    NormalForms { snf: d, u, v, hnf }
}

/// Basis of the dual lattice in the coordinates of `l` itself: the columns
/// of the inverse Gram matrix, in canonical HNF.
pub fn dual_lattice(l: &IntLattice) -> Result<RatMat> {
    if l.is_degenerate() {
        return Err(Error::DegenerateForm);
    }
    let inv = l.gram().to_rat().inverse().ok_or(Error::DegenerateForm)?;
    Ok(inv.lattice_hnf())
}

/// Structure of the discriminant group `L* / L`, with generator lifts in
/// the coordinates of `L`. Its order is `|det gram|`.
pub fn discriminant_group(l: &IntLattice) -> Result<FinAbGroup> {
    let dual = dual_lattice(l)?;
    FinAbGroup::from_lattice_quotient(&dual, &RatMat::identity(l.rank()))
}

fn integral_ambient_basis(sub: &IntLattice) -> Result<IntMat> {
    let basis = sub
        .basis_in_ambient()
        .ok_or_else(|| Error::NotASublattice("sublattice has no ambient basis".into()))?;
    basis
        .to_int()
        .ok_or_else(|| Error::NotASublattice("basis vectors are not integral in the ambient".into()))
}

/// Orthogonal complement of `sub` inside `ambient`. The result is saturated
/// and carries its ambient basis and induced Gram matrix.
pub fn orthogonal_complement(sub: &IntLattice, ambient: &IntLattice) -> Result<IntLattice> {
    ambient.require_nondegenerate()?;
    let basis = integral_ambient_basis(sub)?;
    // rows: pairings with the sublattice basis vectors
    let pairings = basis.transpose().mul(ambient.gram());
    let kernel = pairings.integral_kernel();
    IntLattice::sublattice_of(ambient, &kernel.to_rat())
}

/// Saturation of `sub` in `ambient` and whether `sub` already equals it.
pub fn primitivity(sub: &IntLattice, ambient: &IntLattice) -> Result<(bool, IntLattice)> {
    let basis = integral_ambient_basis(sub)?;
    let sat = basis.saturation();
    let is_primitive = basis.hnf_basis() == sat;
    let saturation = IntLattice::sublattice_of(ambient, &sat.to_rat())?;
    Ok((is_primitive, saturation))
}

/// Divisibility of `h` in `l`: the positive generator `m` of the pairing
/// ideal `(l . h)`.
pub fn divisibility(l: &IntLattice, h: &[Int]) -> Result<Int> {
    if h.len() != l.rank() {
        return Err(Error::Dimension(format!(
            "class has {} coordinates, lattice rank is {}",
            h.len(),
            l.rank()
        )));
    }
    if h.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroClass);
    }
    let w = l.gram().mul_vec(h);
    let m = gcd_slice(&w);
    if m.is_zero() {
        // h pairs to zero with everything: only possible for degenerate forms
        return Err(Error::DegenerateForm);
    }
    Ok(m)
}

/// True if the coordinate vector is primitive (content 1).
pub fn is_primitive_vector(h: &[Int]) -> bool {
    gcd_slice(h).is_one()
}
