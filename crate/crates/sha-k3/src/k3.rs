//! K3-specific lattice data: the unimodular rank-22 lattice, transcendental
//! lattices of embedded Neron-Severi lattices, the discriminant-group gluing
//! checks, and B-field projection.
//!
//! A surface is given by its Neron-Severi Gram matrix, optionally with a
//! primitive embedding into the K3 lattice. All transcendental-side data is
//! derived eagerly at construction, so a constructed value is immutable and
//! cheap to share.

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{
    discriminant_group, dual_lattice, orthogonal_complement, FinAbGroup, IntLattice,
};
use crate::mat::{Int, IntMat, Rat, RatMat};
use crate::qz::{induced_morphism, verify_exact, ExactnessReport, Order, QZModPresentation};
use crate::subgroup::QSubgroup;

/// Rank of the K3 lattice.
pub const K3_RANK: usize = 22;

fn hyperbolic_block(g: &mut IntMat, off: usize) {
    g.set(off, off + 1, Int::one());
    g.set(off + 1, off, Int::one());
}

fn e8_minus_block(g: &mut IntMat, off: usize) {
    // negated E8 Cartan matrix: -2 on the diagonal, +1 on the edges of the
    // E8 diagram (chain 1-3-4-5-6-7-8 with 2 attached to 4)
    const EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    for i in 0..8 {
        g.set(off + i, off + i, Int::from(-2));
    }
    for &(a, b) in &EDGES {
        g.set(off + a, off + b, Int::one());
        g.set(off + b, off + a, Int::one());
    }
}

/// The K3 lattice: three hyperbolic planes and two negative E8 blocks.
/// Determinant -1, signature (3, 19).
pub fn k3_gram() -> IntLattice {
    let mut g = IntMat::zeros(K3_RANK, K3_RANK);
    hyperbolic_block(&mut g, 0);
    hyperbolic_block(&mut g, 2);
    hyperbolic_block(&mut g, 4);
    e8_minus_block(&mut g, 6);
    e8_minus_block(&mut g, 14);
    IntLattice::new(g).expect("symmetric by construction")
}

/// Basis matrix (one vector per column) from rows of K3-lattice coordinates.
pub fn embedding_from_rows(rows: &[Vec<i64>]) -> IntMat {
    for r in rows {
        assert_eq!(r.len(), K3_RANK, "embedding vectors have 22 coordinates");
    }
    IntMat::from_rows(rows).transpose()
}

/// Transcendental-side data derived from a primitive embedding.
#[derive(Clone, Debug)]
pub struct Embedded {
    /// 22 x rho basis of the Neron-Severi lattice in K3 coordinates.
    pub basis: IntMat,
    /// Orthogonal complement of the Neron-Severi lattice, with its ambient
    /// basis and induced Gram matrix.
    pub t: IntLattice,
    /// Orthogonal projection onto the transcendental span, in T-coordinates
    /// (a t x 22 rational matrix).
    pub proj_t: RatMat,
    /// The image of the full lattice under the projection: a lattice in
    /// T-coordinates containing the standard lattice with finite index.
    pub tprime: RatMat,
    /// Complement projection onto the Neron-Severi span, in NS-coordinates.
    pub proj_ns: RatMat,
    /// Integral section of the restriction map: a 22 x rho integer matrix
    /// whose column j restricts to the j-th dual basis vector.
    pub section: IntMat,
    /// Transport of discriminant classes from NS-coordinates to
    /// T-coordinates: integral lift followed by orthogonal projection.
    pub transport: RatMat,
    /// Discriminant group of the transcendental lattice, computed on the
    /// T-side as tprime modulo the standard lattice.
    pub a_t: FinAbGroup,
}

/// A K3 surface at the lattice level: the Neron-Severi lattice, its
/// discriminant group, and (when an embedding is supplied) the full
/// transcendental picture.
#[derive(Clone, Debug)]
pub struct K3Surface {
    ns: IntLattice,
    a_ns: FinAbGroup,
    embedded: Option<Embedded>,
}

impl K3Surface {
    /// Abstract mode: only the Neron-Severi Gram matrix is known. All
    /// NS-side quantities are available; transcendental presentations are
    /// not.
    pub fn from_ns(gram: IntMat) -> Result<Self> {
        let ns = IntLattice::new(gram)?;
        if ns.is_degenerate() {
            return Err(Error::DegenerateForm);
        }
        let a_ns = discriminant_group(&ns)?;
        Ok(K3Surface { ns, a_ns, embedded: None })
    }

    /// Embedded mode: the columns of `basis` span the Neron-Severi lattice
    /// inside the K3 lattice. The sublattice must be primitive and its form
    /// nondegenerate.
    pub fn from_embedding(basis: &IntMat) -> Result<Self> {
        let lambda = k3_gram();
        if basis.rows() != K3_RANK {
            return Err(Error::Dimension("embedding vectors must have 22 coordinates".into()));
        }
        let ns = IntLattice::sublattice_of(&lambda, &basis.to_rat())?;
        Self::build(ns, basis.clone(), lambda)
    }

    /// Embedded mode with an independently supplied Gram matrix, which must
    /// agree with the pairing induced by the embedding.
    pub fn embedded(gram: IntMat, basis: &IntMat) -> Result<Self> {
        let s = Self::from_embedding(basis)?;
        if s.ns.gram() != &gram {
            return Err(Error::EmbeddingMismatch);
        }
        Ok(s)
    }

    fn build(ns: IntLattice, basis: IntMat, lambda: IntLattice) -> Result<Self> {
        if ns.rank() == 0 || ns.rank() >= K3_RANK {
            return Err(Error::Dimension("the Neron-Severi rank must be between 1 and 21".into()));
        }
        // primitivity: the column lattice must equal its saturation
        if basis.hnf_basis() != basis.saturation() {
            return Err(Error::NotPrimitive);
        }
        if ns.is_degenerate() {
            return Err(Error::DegenerateForm);
        }
        let a_ns = discriminant_group(&ns)?;
        let t = orthogonal_complement(&ns, &lambda)?;
        let k = t
            .basis_in_ambient()
            .expect("complement carries its basis")
            .clone();
        let g_lambda = lambda.gram().to_rat();
        let g_t_inv = t.gram().to_rat().inverse().ok_or(Error::DegenerateForm)?;
        let proj_t = g_t_inv.mul(&k.transpose()).mul(&g_lambda);
        let tprime = proj_t.lattice_hnf();
        let g_ns_inv = ns.gram().to_rat().inverse().ok_or(Error::DegenerateForm)?;
        let proj_ns = g_ns_inv.mul(&basis.to_rat().transpose()).mul(&g_lambda);
        // integral section of the restriction map onto the dual basis;
        // exists exactly because the sublattice is primitive
        let restriction = basis.transpose().mul(lambda.gram());
        let section = restriction
            .solve_integral(&IntMat::identity(ns.rank()))
            .ok_or(Error::NotPrimitive)?;
        let transport = proj_t.mul(&section.to_rat()).mul(&ns.gram().to_rat());
        let a_t = FinAbGroup::from_lattice_quotient(&tprime, &RatMat::identity(t.rank()))?;
        Ok(K3Surface {
            ns,
            a_ns,
            embedded: Some(Embedded {
                basis,
                t,
                proj_t,
                tprime,
                proj_ns,
                section,
                transport,
                a_t,
            }),
        })
    }

    pub fn ns(&self) -> &IntLattice {
        &self.ns
    }

    /// Discriminant group of the Neron-Severi lattice, lifts in
    /// NS-coordinates.
    pub fn a_group(&self) -> &FinAbGroup {
        &self.a_ns
    }

    pub fn rank(&self) -> usize {
        self.ns.rank()
    }

    pub fn is_embedded(&self) -> bool {
        self.embedded.is_some()
    }

    pub fn embedded_data(&self) -> Result<&Embedded> {
        self.embedded.as_ref().ok_or(Error::MissingEmbedding)
    }

    pub fn t(&self) -> Result<&IntLattice> {
        Ok(&self.embedded_data()?.t)
    }

    /// The torsion-free quotient lattice, as a sublattice of the
    /// transcendental coordinate space. It contains the standard lattice
    /// with index the discriminant order.
    pub fn tprime(&self) -> Result<&RatMat> {
        Ok(&self.embedded_data()?.tprime)
    }

    /// `(T, T', A)`: the transcendental lattice, the torsion-free quotient
    /// in T-coordinates, and the discriminant group.
    pub fn hodge_decomposition(&self) -> Result<(&IntLattice, &RatMat, &FinAbGroup)> {
        let e = self.embedded_data()?;
        Ok((&e.t, &e.tprime, &self.a_ns))
    }
}

/// The exactness suite for an embedded surface: the defining lattice
/// sequence, the torsion gluing sequence, the four-term dual sequence, and
/// the lattice identification of the torsion-free quotient with the dual.
#[derive(Clone, Debug)]
pub struct HodgeSuite {
    /// `0 -> NS -> H^2 -> T' -> 0` at the lattice level.
    pub lattice_sequence: ExactnessReport,
    /// `0 -> A -> T x Q/Z -> T' x Q/Z -> 0`.
    pub torsion_sequence: ExactnessReport,
    /// `0 -> NS -> NS* -> T x Q/Z -> T* x Q/Z -> 0`.
    pub four_term_sequence: ExactnessReport,
    /// `T' = T*` as sublattices of the transcendental coordinate space.
    pub tprime_equals_dual: bool,
    /// Invariant factors of `T'/T` agree with those of `NS*/NS`.
    pub discriminants_match: bool,
}

impl HodgeSuite {
    pub fn passed(&self) -> bool {
        self.lattice_sequence.passed()
            && self.torsion_sequence.passed()
            && self.four_term_sequence.passed()
            && self.tprime_equals_dual
            && self.discriminants_match
    }
}

/// Build and verify every sequence of the gluing picture for an embedded
/// surface. Nothing is assumed: each junction is checked by exact lattice
/// arithmetic and failures carry witnesses.
pub fn hodge_sequence_suite(surface: &K3Surface) -> Result<HodgeSuite> {
    let e = surface.embedded_data()?;
    let rho = surface.rank();
    let t_rank = e.t.rank();

    // 0 -> NS -> H^2 -> T' -> 0 with free presentations
    let ns_free = QZModPresentation::free(&RatMat::identity(rho));
    let lambda_free = QZModPresentation::free(&RatMat::identity(K3_RANK));
    let tprime_free = QZModPresentation::free(&e.tprime);
    let inc = induced_morphism(&ns_free, &lambda_free, &e.basis.to_rat())?;
    let proj = induced_morphism(&lambda_free, &tprime_free, &e.proj_t)?;
    let lattice_sequence = verify_exact(&[inc, proj], true)?;

    // 0 -> A -> (T x Q)/T -> (T x Q)/T' -> 0
    let a_pres = QZModPresentation::finite(&e.tprime, &RatMat::identity(t_rank))?;
    let sbro = QZModPresentation::full_space_mod(&RatMat::identity(t_rank))?;
    let br = QZModPresentation::full_space_mod(&e.tprime)?;
    let id_t = RatMat::identity(t_rank);
    let inc = induced_morphism(&a_pres, &sbro, &id_t)?;
    let proj = induced_morphism(&sbro, &br, &id_t)?;
    let torsion_sequence = verify_exact(&[inc, proj], true)?;

    // 0 -> NS -> NS* -> (T x Q)/T -> (T x Q)/T* -> 0
    let ns_dual_free = QZModPresentation::free(&dual_lattice(surface.ns())?);
    let t_dual = dual_lattice(&e.t)?;
    let br_dual = QZModPresentation::full_space_mod(&t_dual)?;
    let to_dual = induced_morphism(&ns_free, &ns_dual_free, &RatMat::identity(rho))?;
    // a dual vector is sent to the projection of an integral lift: on the
    // dual basis the lift is the integral section, so on ambient
    // coordinates the matrix is transport = proj . section . gram
    let lift_project = induced_morphism(&ns_dual_free, &sbro, &e.transport)?;
    let to_br_dual = induced_morphism(&sbro, &br_dual, &id_t)?;
    let four_term_sequence = verify_exact(&[to_dual, lift_project, to_br_dual], true)?;

    let tprime_equals_dual = e.tprime == t_dual;
    let discriminants_match =
        surface.a_group().invariant_factors() == e.a_t.invariant_factors();

    Ok(HodgeSuite {
        lattice_sequence,
        torsion_sequence,
        four_term_sequence,
        tprime_equals_dual,
        discriminants_match,
    })
}

/// A B-field class: the projection of a rational degree-two class to the
/// transcendental side, together with its orders upstairs and downstairs.
#[derive(Clone, Debug)]
pub struct BFieldClass {
    /// Canonical representative modulo the transcendental lattice.
    pub rep: Vec<Rat>,
    /// Order in `(T x Q)/T`.
    pub order: Int,
    /// Order of the induced Brauer class in `(T x Q)/T'`.
    pub brauer_order: Int,
}

impl BFieldClass {
    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn brauer_trivial(&self) -> bool {
        self.brauer_order.is_one()
    }
}

/// Project a rational class on the full lattice to the transcendental
/// quotient. Integral classes induce trivial Brauer classes; classes from
/// the Neron-Severi span project to zero.
pub fn bfield_project(surface: &K3Surface, b: &[Rat]) -> Result<BFieldClass> {
    let e = surface.embedded_data()?;
    if b.len() != K3_RANK {
        return Err(Error::Dimension("B-field has 22 coordinates".into()));
    }
    let proj = e.proj_t.mul_vec(b);
    let sbro = QZModPresentation::full_space_mod(&RatMat::identity(e.t.rank()))?;
    let br = QZModPresentation::full_space_mod(&e.tprime)?;
    let rep = sbro.canonical_rep(&proj)?;
    let order = match sbro.element_order(&proj)? {
        Order::Finite(n) => n,
        Order::Infinite => return Err(Error::NotPresentable),
    };
    let brauer_order = match br.element_order(&proj)? {
        Order::Finite(n) => n,
        Order::Infinite => return Err(Error::NotPresentable),
    };
    Ok(BFieldClass { rep, order, brauer_order })
}

/// The canonical transport of a discriminant class, given in NS-coordinates
/// as an element of the dual lattice, to T-coordinates: integral lift,
/// then orthogonal projection. Well-definedness modulo the transcendental
/// lattice is a checked invariant of the suite, not an assumption.
pub fn transport_class(surface: &K3Surface, v: &[Rat]) -> Result<Vec<Rat>> {
    let e = surface.embedded_data()?;
    if v.len() != surface.rank() {
        return Err(Error::Dimension("class must be in NS-coordinates".into()));
    }
    let dual = dual_lattice(surface.ns())?;
    if !QSubgroup::from_lattice(&dual).contains(v) {
        return Err(Error::NotInCarrier);
    }
    Ok(e.transport.mul_vec(v))
}
