//! Representations on graded spaces and the checks that make one triangular:
//! the homomorphism property, Levi factor in degree 0, nil radical in strictly
//! positive degree, faithfulness, irreducibility of each component, and
//! stability of all of this under conjugating the Levi factor by `exp(ad z)`.

use serde::Serialize;
use thiserror::Error;

use crate::exact::{RatMatrix, Rational};
use crate::graded::{GradedError, GradedMap, GradedSpace};
use crate::liealg::{subalgebra_is_semisimple, unit, LeviData, LieAlgebra, Subspace, Vector};
use crate::sl2theory::{is_irreducible, Sl2Action, Sl2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("unsupported Levi factor: {0}")]
    UnsupportedLevi(String),
    #[error("Levi factor does not act in degree 0, so components are not Levi modules")]
    ConditionIFails,
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error("element is not in the nil radical")]
    NotInNilradical,
    #[error("{0} is not nilpotent")]
    NotNilpotent(&'static str),
    #[error("vector of length {got} given to an algebra of dimension {dim}")]
    LengthMismatch { dim: usize, got: usize },
    #[error("frame basis is singular")]
    SingularFrame,
}

/// A linear map from the algebra into endomorphisms of a graded space, given by
/// the image of each basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: LieAlgebra,
    levi: LeviData,
    space: GradedSpace,
    images: Vec<GradedMap>,
}

impl Representation {
    pub fn new(
        algebra: LieAlgebra,
        levi: LeviData,
        space: GradedSpace,
        images: Vec<RatMatrix>,
    ) -> Result<Self, RepError> {
        if images.len() != algebra.dim() {
            return Err(RepError::ImageCount { expected: algebra.dim(), got: images.len() });
        }
        let images = images
            .into_iter()
            .map(|m| GradedMap::new(space.clone(), m))
            .collect::<Result<_, _>>()?;
        Ok(Representation { algebra, levi, space, images })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn levi(&self) -> &LeviData {
        &self.levi
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn images(&self) -> &[GradedMap] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &GradedMap {
        &self.images[i]
    }

    /// Replaces the image of basis element `i`; sizes are checked.
    pub fn set_image(&mut self, i: usize, m: RatMatrix) -> Result<(), RepError> {
        self.images[i] = GradedMap::new(self.space.clone(), m)?;
        Ok(())
    }

    /// `ρ(x) = Σ x_i ρ(b_i)`.
    pub fn image_of(&self, x: &[Rational]) -> Result<RatMatrix, RepError> {
        if x.len() != self.algebra.dim() {
            return Err(RepError::LengthMismatch { dim: self.algebra.dim(), got: x.len() });
        }
        let n = self.space.total_dim();
        let mut out = RatMatrix::zeros(n, n);
        for (c, img) in x.iter().zip(&self.images) {
            if !c.is_zero() {
                out = &out + &img.matrix().scale(c);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `ρ([b_i, b_j]) ≠ [ρ(b_i), ρ(b_j)]`.
    BasisPair { condition: &'static str, i: String, j: String },
    /// A nonzero block `(from → to)` in the image of `element`.
    Block { condition: &'static str, element: String, from: usize, to: usize },
    /// Coefficients of a nonzero algebra element acting by zero.
    KernelVector { coefficients: Vec<Rational> },
    /// Grading component that is not an irreducible Levi module.
    Component { degree: usize },
    Note { condition: &'static str, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub homomorphism: bool,
    pub triangular_all: bool,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub faithful: bool,
    /// Per-component irreducibility, or `None` when it could not be decided
    /// (Levi factor not recognised as `sl_2`, or condition (i) fails).
    pub irreducible_components: Option<Vec<bool>>,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    /// Homomorphism plus triangularity and both conditions.
    pub fn is_triangular_representation(&self) -> bool {
        self.homomorphism && self.triangular_all && self.condition_i && self.condition_ii
    }

    pub fn all_components_irreducible(&self) -> bool {
        self.irreducible_components.as_ref().is_some_and(|c| !c.is_empty() && c.iter().all(|&b| b))
    }
}

/// First basis pair `(i, j)`, `i < j`, with `ρ([b_i, b_j]) ≠ [ρ(b_i), ρ(b_j)]`.
/// The bracket table is taken to be antisymmetric (see `check_axioms`).
pub fn homomorphism_violation(rho: &Representation) -> Option<(usize, usize)> {
    let n = rho.algebra.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = rho.image_of(&rho.algebra.basis_bracket(i, j)).unwrap();
            let rhs = rho.images[i].matrix().commutator(rho.images[j].matrix()).unwrap();
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn verify_homomorphism(rho: &Representation) -> bool {
    homomorphism_violation(rho).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularConditions {
    pub triangular_all: bool,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub witnesses: Vec<Witness>,
}

fn first_off_stripe(map: &GradedMap, j: usize) -> Option<(usize, usize)> {
    let c = map.space().num_components();
    (0..c)
        .flat_map(|from| (0..c).map(move |to| (from, to)))
        .find(|&(from, to)| to != from + j && !map.block(from, to).is_zero())
}

fn first_nonzero_diagonal(map: &GradedMap) -> Option<usize> {
    (0..map.space().num_components()).find(|&k| !map.block(k, k).is_zero())
}

/// Triangularity of every image, Levi images homogeneous of degree 0, and
/// nil radical images with vanishing degree-0 part.
pub fn verify_triangular_conditions(rho: &Representation) -> TriangularConditions {
    let label = |i: usize| rho.algebra.label(i).to_string();
    let mut out = TriangularConditions { triangular_all: true, condition_i: true, condition_ii: true, witnesses: vec![] };
    for (i, img) in rho.images.iter().enumerate() {
        if let Some((from, to)) = img.triangularity_violation() {
            out.triangular_all = false;
            out.witnesses.push(Witness::Block { condition: "triangular", element: label(i), from, to });
            break;
        }
    }
    for &i in &rho.levi.levi {
        if let Some((from, to)) = first_off_stripe(&rho.images[i], 0) {
            out.condition_i = false;
            out.witnesses.push(Witness::Block { condition: "condition_i", element: label(i), from, to });
            break;
        }
    }
    for &i in &rho.levi.nilradical {
        let img = &rho.images[i];
        let bad = img.triangularity_violation().or_else(|| first_nonzero_diagonal(img).map(|k| (k, k)));
        if let Some((from, to)) = bad {
            out.condition_ii = false;
            out.witnesses.push(Witness::Block { condition: "condition_ii", element: label(i), from, to });
            break;
        }
    }
    out
}

/// Basis of `{ x : Σ x_i ρ(b_i) = 0 }`.
pub fn kernel(rho: &Representation) -> Vec<Vector> {
    let n = rho.space.total_dim();
    let cols: Vec<Vec<Rational>> = rho.images.iter().map(|m| m.matrix().data().to_vec()).collect();
    RatMatrix::from_columns(n * n, &cols).nullspace()
}

/// Standard triple `(f, h, e)` inside the declared Levi factor, found by
/// permuting and rescaling its three basis vectors.
pub fn recognize_sl2(l: &LieAlgebra, d: &LeviData) -> Result<(Vector, Vector, Vector), RepError> {
    if d.levi.len() != 3 {
        return Err(RepError::UnsupportedLevi(format!("Levi factor has dimension {}, not 3", d.levi.len())));
    }
    let n = l.dim();
    let proportional = |v: &Vector, target: &Vector| -> Option<Rational> {
        // v = c * target with target a nonzero basis vector
        let k = target.iter().position(|x| !x.is_zero())?;
        let c = &v[k] / &target[k];
        v.iter().zip(target).all(|(a, b)| a == &(&c * b)).then_some(c)
    };
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in PERMS {
        let (xh, xe, xf) = (unit(n, d.levi[p[0]]), unit(n, d.levi[p[1]]), unit(n, d.levi[p[2]]));
        let Some(alpha) = proportional(&l.bracket(&xh, &xe).unwrap(), &xe) else { continue };
        if alpha.is_zero() {
            continue;
        }
        let Some(beta) = proportional(&l.bracket(&xh, &xf).unwrap(), &xf) else { continue };
        if beta != -&alpha {
            continue;
        }
        let s = &Rational::from(2) / &alpha;
        let h: Vector = xh.iter().map(|x| x * &s).collect();
        let Some(gamma) = proportional(&l.bracket(&xe, &xf).unwrap(), &h) else { continue };
        if gamma.is_zero() {
            continue;
        }
        let f: Vector = xf.iter().map(|x| x / &gamma).collect();
        return Ok((f, h, xe));
    }
    Err(RepError::UnsupportedLevi("no standard sl2 triple among rescaled Levi basis vectors".into()))
}

/// Whether each grading component is an irreducible module for the Levi
/// factor. Only `sl_2` Levi factors are supported.
pub fn is_k_irreducible(rho: &Representation) -> Result<Vec<bool>, RepError> {
    if !verify_triangular_conditions(rho).condition_i {
        return Err(RepError::ConditionIFails);
    }
    let (f, h, e) = recognize_sl2(&rho.algebra, &rho.levi)?;
    let (rf, rh, re) = (rho.image_of(&f)?, rho.image_of(&h)?, rho.image_of(&e)?);
    let space = &rho.space;
    (0..space.num_components())
        .map(|k| {
            let r = space.range(k);
            let blk = |m: &RatMatrix| m.block(r.start, r.end, r.start, r.end);
            let action = Sl2Action { f: blk(&rf), h: blk(&rh), e: blk(&re) };
            Ok(is_irreducible(&action)?)
        })
        .collect()
}

/// Runs every check and collects witnesses.
pub fn verify(rho: &Representation) -> VerificationReport {
    let mut witnesses = Vec::new();
    let hom = homomorphism_violation(rho);
    if let Some((i, j)) = hom {
        witnesses.push(Witness::BasisPair {
            condition: "homomorphism",
            i: rho.algebra.label(i).to_string(),
            j: rho.algebra.label(j).to_string(),
        });
    }
    let tri = verify_triangular_conditions(rho);
    witnesses.extend(tri.witnesses.iter().cloned());
    let ker = kernel(rho);
    if let Some(v) = ker.first() {
        witnesses.push(Witness::KernelVector { coefficients: v.clone() });
    }
    let irreducible_components = match is_k_irreducible(rho) {
        Ok(c) => {
            witnesses.extend(c.iter().enumerate().filter(|(_, ok)| !**ok).map(|(k, _)| Witness::Component { degree: k }));
            Some(c)
        }
        Err(e) => {
            witnesses.push(Witness::Note { condition: "irreducible_components", message: e.to_string() });
            None
        }
    };
    VerificationReport {
        homomorphism: hom.is_none(),
        triangular_all: tri.triangular_all,
        condition_i: tri.condition_i,
        condition_ii: tri.condition_ii,
        faithful: ker.is_empty(),
        irreducible_components,
        witnesses,
    }
}

/// `exp(m) = Σ m^k / k!` for nilpotent `m`; `None` if `m` is not nilpotent.
pub fn exp_nilpotent(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    let mut out = RatMatrix::identity(n);
    let mut term = RatMatrix::identity(n);
    for k in 1..=n.max(1) {
        term = (&term * m).scale(&Rational::frac(1, k as i64));
        if term.is_zero() {
            return Some(out);
        }
        out = &out + &term;
    }
    term = &term * m;
    term.is_zero().then_some(out)
}

/// A choice of Levi factor (as algebra vectors) together with a graded basis
/// of the module: column `c` of `grading_basis` is the `c`-th basis vector,
/// and its degree is read from the representation's dimension profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviFrame {
    pub levi_basis: Vec<Vector>,
    pub grading_basis: RatMatrix,
}

impl LeviFrame {
    pub fn standard(rho: &Representation) -> Self {
        let n = rho.algebra.dim();
        LeviFrame {
            levi_basis: rho.levi.levi.iter().map(|&i| unit(n, i)).collect(),
            grading_basis: RatMatrix::identity(rho.space.total_dim()),
        }
    }
}

/// Moves a frame by `exp(ad z)` on the algebra side and `exp(ρ(z))` on the module side.
pub fn conjugate_frame(rho: &Representation, frame: &LeviFrame, z: &[Rational]) -> Result<LeviFrame, RepError> {
    let l = &rho.algebra;
    let nil = rho.levi.nilradical_span(l.dim());
    if z.len() != l.dim() {
        return Err(RepError::LengthMismatch { dim: l.dim(), got: z.len() });
    }
    if !nil.contains(z) {
        return Err(RepError::NotInNilradical);
    }
    let ad_exp = exp_nilpotent(&l.ad(z).unwrap()).ok_or(RepError::NotNilpotent("ad z"))?;
    let rho_exp = exp_nilpotent(&rho.image_of(z)?).ok_or(RepError::NotNilpotent("rho(z)"))?;
    Ok(LeviFrame {
        levi_basis: frame.levi_basis.iter().map(|s| ad_exp.mul_vec(s)).collect(),
        grading_basis: &rho_exp * &frame.grading_basis,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationReport {
    /// The moved Levi span is a subalgebra with nondegenerate Killing form.
    pub levi_semisimple: bool,
    /// The moved Levi span is complementary to the radical.
    pub levi_complements_radical: bool,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub witnesses: Vec<Witness>,
}

impl ConjugationReport {
    pub fn all_pass(&self) -> bool {
        self.levi_semisimple && self.levi_complements_radical && self.condition_i && self.condition_ii
    }
}

/// Checks that `ρ` is triangular with respect to the frame's Levi factor and
/// the grading whose components are spanned by the frame's basis columns.
pub fn check_frame(rho: &Representation, frame: &LeviFrame) -> Result<ConjugationReport, RepError> {
    let l = &rho.algebra;
    let n = l.dim();
    let mut witnesses = Vec::new();
    let levi_semisimple = subalgebra_is_semisimple(l, &frame.levi_basis).unwrap_or(false)
        && Subspace::span(n, &frame.levi_basis).dim() == frame.levi_basis.len();
    let rad = rho.levi.radical_span(n);
    let levi_complements_radical =
        Subspace::span(n, &frame.levi_basis).sum(&rad).dim() == n && frame.levi_basis.len() + rad.dim() == n;
    if !levi_semisimple {
        witnesses.push(Witness::Note { condition: "levi_semisimple", message: "moved Levi span is not semisimple".into() });
    }
    if !levi_complements_radical {
        witnesses.push(Witness::Note {
            condition: "levi_complements_radical",
            message: "moved Levi span does not complement the radical".into(),
        });
    }

    let inv = frame
        .grading_basis
        .inverse()
        .ok_or(RepError::SingularFrame)?;
    let in_frame = |m: &RatMatrix| GradedMap::new(rho.space.clone(), &(&inv * m) * &frame.grading_basis);

    let mut condition_i = true;
    for (a, s) in frame.levi_basis.iter().enumerate() {
        let g = in_frame(&rho.image_of(s)?)?;
        if let Some((from, to)) = first_off_stripe(&g, 0) {
            condition_i = false;
            witnesses.push(Witness::Block { condition: "condition_i", element: format!("levi[{a}]"), from, to });
            break;
        }
    }
    let mut condition_ii = true;
    for &i in &rho.levi.nilradical {
        let g = in_frame(rho.images[i].matrix())?;
        let bad = g.triangularity_violation().or_else(|| first_nonzero_diagonal(&g).map(|k| (k, k)));
        if let Some((from, to)) = bad {
            condition_ii = false;
            witnesses.push(Witness::Block {
                condition: "condition_ii",
                element: l.label(i).to_string(),
                from,
                to,
            });
            break;
        }
    }
    Ok(ConjugationReport { levi_semisimple, levi_complements_radical, condition_i, condition_ii, witnesses })
}

/// Conjugates the declared Levi factor by `exp(ad z)` and the grading by
/// `exp(ρ(z))`, then re-checks both triangularity conditions.
pub fn conjugate_levi_check(rho: &Representation, z: &[Rational]) -> Result<ConjugationReport, RepError> {
    let frame = conjugate_frame(rho, &LeviFrame::standard(rho), z)?;
    check_frame(rho, &frame)
}
