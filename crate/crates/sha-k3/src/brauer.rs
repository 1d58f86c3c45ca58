//! Presentations of the Brauer-type groups of an embedded surface, the
//! restriction kernels attached to curve classes, and decomposition of
//! special Brauer classes into algebraic and transcendental parts.
//!
//! The Brauer group is never represented abstractly as a sum of copies of
//! Q/Z; only its presentation as transcendental span modulo torsion-free
//! quotient lattice is used, so every kernel computation stays exact.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::k3::{K3Surface, K3_RANK};
use crate::lattice::{divisibility, dual_lattice, IntLattice};
use crate::mat::{Int, Rat, RatMat};
use crate::qz::{induced_morphism, verify_exact, ExactnessReport, QZModMorphism, QZModPresentation};
use crate::subgroup::QSubgroup;

/// The three Brauer-type presentations of an embedded surface and the maps
/// that tie them together, with their defining sequences verified.
#[derive(Clone, Debug)]
pub struct BrauerPresentations {
    /// `(H^2 x Q) / H^2` in K3 coordinates.
    pub sbr: QZModPresentation,
    /// `(T x Q) / T` in T-coordinates.
    pub sbro: QZModPresentation,
    /// `(T x Q) / T'` in T-coordinates.
    pub br: QZModPresentation,
    /// `(NS x Q) / NS` in NS-coordinates.
    pub ns_torsion: QZModPresentation,
    /// The discriminant group presented as `T' / T`.
    pub a_pres: QZModPresentation,
    pub a_to_sbro: QZModMorphism,
    pub sbro_to_br: QZModMorphism,
    pub ns_to_sbr: QZModMorphism,
    pub sbr_to_br: QZModMorphism,
    /// Inclusion of the restricted group into the full special group,
    /// induced by the transcendental basis.
    pub sbro_to_sbr: QZModMorphism,
    /// `0 -> A -> SBr^o -> Br -> 0`.
    pub restricted_sequence: ExactnessReport,
    /// `0 -> NS x Q/Z -> SBr -> Br -> 0`.
    pub special_sequence: ExactnessReport,
}

impl BrauerPresentations {
    pub fn passed(&self) -> bool {
        self.restricted_sequence.passed() && self.special_sequence.passed()
    }
}

/// Build the Brauer presentations of an embedded surface and verify both
/// defining extensions.
pub fn brauer_presentations(surface: &K3Surface) -> Result<BrauerPresentations> {
    let e = surface.embedded_data()?;
    let rho = surface.rank();
    let t_rank = e.t.rank();

    let sbr = QZModPresentation::full_space_mod(&RatMat::identity(K3_RANK))?;
    let sbro = QZModPresentation::full_space_mod(&RatMat::identity(t_rank))?;
    let br = QZModPresentation::full_space_mod(&e.tprime)?;
    let ns_torsion = QZModPresentation::full_space_mod(&RatMat::identity(rho))?;
    let a_pres = QZModPresentation::finite(&e.tprime, &RatMat::identity(t_rank))?;

    let id_t = RatMat::identity(t_rank);
    let a_to_sbro = induced_morphism(&a_pres, &sbro, &id_t)?;
    let sbro_to_br = induced_morphism(&sbro, &br, &id_t)?;
    let ns_to_sbr = induced_morphism(&ns_torsion, &sbr, &e.basis.to_rat())?;
    let sbr_to_br = induced_morphism(&sbr, &br, &e.proj_t)?;
    let t_basis = e.t.basis_in_ambient().expect("complement carries its basis").clone();
    let sbro_to_sbr = induced_morphism(&sbro, &sbr, &t_basis)?;

    let restricted_sequence = verify_exact(&[a_to_sbro.clone(), sbro_to_br.clone()], true)?;
    let special_sequence = verify_exact(&[ns_to_sbr.clone(), sbr_to_br.clone()], true)?;

    Ok(BrauerPresentations {
        sbr,
        sbro,
        br,
        ns_torsion,
        a_pres,
        a_to_sbro,
        sbro_to_br,
        ns_to_sbr,
        sbr_to_br,
        sbro_to_sbr,
        restricted_sequence,
        special_sequence,
    })
}

/// The kernel of restriction along a curve class `h`, presented as
/// `{v : (v.h) integral} / NS` inside the algebraic torsion group, with its
/// structural facts verified.
#[derive(Clone, Debug)]
pub struct KerRestriction {
    pub presentation: QZModPresentation,
    /// Divisibility of `h`.
    pub m: Int,
    /// The orthogonal part `h-perp x Q/Z` is contained in the kernel.
    pub hperp_contained: bool,
    /// Invariant factors of the quotient by the orthogonal part
    /// (cyclic of order `m` when nontrivial).
    pub quotient_factors: Vec<Int>,
}

/// Compute the restriction kernel of a class `h` in an abstract
/// Neron-Severi lattice.
pub fn ker_restriction(ns: &IntLattice, h: &[Int]) -> Result<KerRestriction> {
    let m = divisibility(ns, h)?;
    let rho = ns.rank();
    let w = ns.gram().mul_vec(h); // pairing covector
    let w_row = RatMat::from_fn(1, rho, |_, j| Rat::from_integer(w[j].clone()));
    // carrier {v : <w, v> in Z} = ker(w) + Z^rho + Z v0 with <w, v0> = 1
    let kernel = w_row.kernel();
    let v0 = w_row
        .solve_vec(&[Rat::one()])
        .expect("a nonzero covector is surjective over Q");
    let lattice_part = RatMat::hcat(&[&RatMat::identity(rho), &RatMat::from_col(&v0)]);
    let carrier = QSubgroup::from_parts(&kernel, &lattice_part);
    let denominator = QSubgroup::standard_lattice(rho);
    let presentation = QZModPresentation::new(carrier.clone(), denominator)?;

    // h-perp x Q/Z sits inside with cyclic quotient of order m
    let hperp = QSubgroup::from_parts(&kernel, &RatMat::identity(rho));
    let hperp_contained = hperp.subgroup_of(&carrier);
    let quotient_factors = carrier.quotient_by(&hperp).invariant_factors();
    Ok(KerRestriction { presentation, m, hperp_contained, quotient_factors })
}

/// Intersection of the restriction kernels over a lattice basis: equals the
/// dual lattice modulo the lattice itself.
pub fn restricted_core(ns: &IntLattice) -> Result<QZModPresentation> {
    if ns.is_degenerate() {
        return Err(Error::DegenerateForm);
    }
    let rho = ns.rank();
    let mut core: Option<QSubgroup> = None;
    for i in 0..rho {
        let h: Vec<Int> = (0..rho).map(|j| if j == i { Int::one() } else { Int::zero() }).collect();
        let k = ker_restriction(ns, &h)?;
        core = Some(match core {
            None => k.presentation.carrier().clone(),
            Some(c) => c.intersect(k.presentation.carrier()),
        });
    }
    let core = core.expect("positive rank");
    QZModPresentation::new(core, QSubgroup::standard_lattice(rho))
}

/// A special Brauer class: a rational class on the full lattice modulo
/// integral classes, together with its orthogonal decomposition.
#[derive(Clone, Debug)]
pub struct SpecialBrauerClass {
    vector: Vec<Rat>,
    ns_part: Vec<Rat>,
    t_part: Vec<Rat>,
    in_sbro: bool,
    order: Int,
}

impl SpecialBrauerClass {
    /// Coordinates of the class in the full lattice.
    pub fn vector(&self) -> &[Rat] {
        &self.vector
    }

    /// Algebraic projection, in NS-coordinates.
    pub fn ns_part(&self) -> &[Rat] {
        &self.ns_part
    }

    /// Transcendental projection, in T-coordinates.
    pub fn t_part(&self) -> &[Rat] {
        &self.t_part
    }

    /// Whether the class restricts trivially to every curve: equivalent to
    /// the algebraic projection landing in the dual lattice.
    pub fn in_restricted_group(&self) -> bool {
        self.in_sbro
    }

    pub fn order(&self) -> &Int {
        &self.order
    }
}

/// Order of a rational class modulo the integral lattice: the least common
/// multiple of its coordinate denominators.
pub fn class_order(vector: &[Rat]) -> Int {
    let mut k = Int::one();
    for x in vector {
        k = k.lcm(x.denom());
    }
    k
}

/// Decompose a rational class into its algebraic and transcendental
/// projections and decide membership in the restricted group.
pub fn decompose(surface: &K3Surface, vector: &[Rat]) -> Result<SpecialBrauerClass> {
    let e = surface.embedded_data()?;
    if vector.len() != K3_RANK {
        return Err(Error::Dimension("class must have 22 coordinates".into()));
    }
    let ns_part = e.proj_ns.mul_vec(vector);
    let t_part = e.proj_t.mul_vec(vector);
    let dual = dual_lattice(surface.ns())?;
    let in_sbro = QSubgroup::from_lattice(&dual).contains(&ns_part);
    let order = class_order(vector);
    Ok(SpecialBrauerClass { vector: vector.to_vec(), ns_part, t_part, in_sbro, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k3::embedding_from_rows;
    use crate::mat::{int, rat, rat_int, vec_add};
    use num_traits::Signed;

    fn surface_u2() -> K3Surface {
        let mut r1 = vec![0i64; 22];
        let mut r2 = vec![0i64; 22];
        r1[0] = 1;
        r1[2] = 1;
        r2[1] = 1;
        r2[3] = 1;
        K3Surface::from_embedding(&embedding_from_rows(&[r1, r2])).unwrap()
    }

    fn surface_u() -> K3Surface {
        let mut r1 = vec![0i64; 22];
        let mut r2 = vec![0i64; 22];
        r1[0] = 1;
        r2[1] = 1;
        K3Surface::from_embedding(&embedding_from_rows(&[r1, r2])).unwrap()
    }

    fn surface_deg2() -> K3Surface {
        let mut row = vec![0i64; 22];
        row[0] = 1;
        row[1] = 1;
        K3Surface::from_embedding(&embedding_from_rows(&[row])).unwrap()
    }

    #[test]
    fn presentations_verify() {
        for s in [surface_u(), surface_u2(), surface_deg2()] {
            let b = brauer_presentations(&s).unwrap();
            assert!(b.passed(), "sequences failed for rank {}", s.rank());
            // kernel of SBr^o -> Br has order |det NS|
            let (ker, _) = b.sbro_to_br.kernel().unwrap();
            assert_eq!(ker.group_order(), Some(s.ns().det().abs()));
        }
    }

    #[test]
    fn unimodular_ns_collapses_restricted_group() {
        let s = surface_u();
        let b = brauer_presentations(&s).unwrap();
        assert_eq!(b.sbro, b.br);
    }

    #[test]
    fn ker_restriction_examples() {
        // U with h = e: divisibility 1, kernel equals the orthogonal part
        let u = IntLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let k = ker_restriction(&u, &[int(1), int(0)]).unwrap();
        assert_eq!(k.m, int(1));
        assert!(k.hperp_contained);
        assert!(k.quotient_factors.is_empty());

        // U(2) with h = e: quotient by the orthogonal part is Z/2
        let u2 = IntLattice::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
        let k = ker_restriction(&u2, &[int(1), int(0)]).unwrap();
        assert_eq!(k.m, int(2));
        assert!(k.hperp_contained);
        assert_eq!(k.quotient_factors, vec![int(2)]);
        // the kernel contains f/2 but not e/2
        assert!(k.presentation.carrier().contains(&[rat_int(0), rat(1, 2)]));
        assert!(!k.presentation.carrier().contains(&[rat(1, 2), rat(1, 4)]));

        // monotonicity under doubling the class
        let k2 = ker_restriction(&u2, &[int(2), int(0)]).unwrap();
        assert!(k.presentation.carrier().subgroup_of(k2.presentation.carrier()));
    }

    #[test]
    fn restricted_core_examples() {
        let u = IntLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let core = restricted_core(&u).unwrap();
        assert!(core.is_trivial_group());

        let u2 = IntLattice::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
        let core = restricted_core(&u2).unwrap();
        assert_eq!(
            core.structure().invariant_factors(),
            vec![int(2), int(2)]
        );

        for k in [1i64, 2, 3] {
            let l = IntLattice::from_rows(&[vec![2 * k]]).unwrap();
            let core = restricted_core(&l).unwrap();
            assert_eq!(core.group_order(), Some(int(2 * k)));
            // the carrier is exactly the dual lattice
            let dual = dual_lattice(&l).unwrap();
            assert_eq!(core.carrier(), &QSubgroup::from_lattice(&dual));
        }
    }

    #[test]
    fn decompose_examples() {
        let s = surface_deg2();
        // integral class: trivial parts, in the restricted group
        let v: Vec<Rat> = (0..22).map(|i| rat_int((i == 6) as i64)).collect();
        let c = decompose(&s, &v).unwrap();
        assert!(c.in_restricted_group());
        assert_eq!(c.order(), &int(1));

        // half a transcendental vector: order 2, trivial algebraic part
        let e = s.embedded_data().unwrap();
        let t0 = e.t.basis_in_ambient().unwrap().col_vec(0);
        let v: Vec<Rat> = t0.iter().map(|x| x * rat(1, 2)).collect();
        let c = decompose(&s, &v).unwrap();
        assert!(c.in_restricted_group());
        assert_eq!(c.order(), &int(2));
        assert!(c.ns_part().iter().all(|x| x.is_zero()));

        // a third of a primitive algebraic class is not in the restricted
        // group when it misses the dual lattice: NS = <2>, dual = (1/2)NS
        let ns0 = e.basis.to_rat().col_vec(0);
        let v: Vec<Rat> = ns0.iter().map(|x| x * rat(1, 3)).collect();
        let c = decompose(&s, &v).unwrap();
        assert!(!c.in_restricted_group());
        assert_eq!(c.order(), &int(3));
    }

    #[test]
    fn decompose_is_additive_and_orthogonal() {
        let s = surface_u2();
        let e = s.embedded_data().unwrap();
        let v1: Vec<Rat> = (0..22).map(|i| rat((i as i64 % 3) - 1, 2)).collect();
        let v2: Vec<Rat> = (0..22).map(|i| rat((i as i64 % 5) - 2, 3)).collect();
        let c1 = decompose(&s, &v1).unwrap();
        let c2 = decompose(&s, &v2).unwrap();
        let c12 = decompose(&s, &vec_add(&v1, &v2)).unwrap();
        assert_eq!(c12.ns_part(), vec_add(c1.ns_part(), c2.ns_part()));
        assert_eq!(c12.t_part(), vec_add(c1.t_part(), c2.t_part()));
        // the two parts recombine to the class exactly
        let back = vec_add(
            &e.basis.to_rat().mul_vec(c1.ns_part()),
            &e.t.basis_in_ambient().unwrap().mul_vec(c1.t_part()),
        );
        assert_eq!(back, v1);
    }

    #[test]
    fn class_orders() {
        assert_eq!(class_order(&[rat_int(3), rat_int(-1)]), int(1));
        assert_eq!(class_order(&[rat(1, 3), rat_int(0)]), int(3));
        assert_eq!(class_order(&[rat(2, 4), rat_int(1)]), int(2));
    }
}
