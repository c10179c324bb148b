//! Linear constitutive tensors, their spatial block decomposition relative
//! to a medium velocity, adjointness, the Post invariant, and the numerical
//! classifier for intrinsic magneto-electric media.
//!
//! A constitutive tensor is a linear map Z on 2-forms with G = Z(F). Its
//! published matrix representation uses the 2-form basis order
//! (01, 02, 03, 23, 31, 12); internally components live on the
//! lexicographic basis of [`PForm`].

use nalgebra::{DMatrix, Matrix4, Matrix6, Vector4 as NaVector4, Vector6};

use crate::error::{CoreError, Result};
use crate::exterior::{Frame, PForm, BASIS_2, ETA};
use crate::fields::Velocity;
use crate::lorentz::LorentzTransform;
use crate::optim::{nelder_mead, NelderMeadOptions};

/// Signature of the induced metric on the lexicographic 2-form basis:
/// ⟨e^I, e^I⟩ = η_aa η_bb for I = (a, b).
const TWO_FORM_METRIC: [f64; 6] = [-1.0, -1.0, -1.0, 1.0, 1.0, 1.0];

/// Signed permutation between the internal lexicographic 2-form order
/// (01, 02, 03, 12, 13, 23) and the published order (01, 02, 03, 23, 31, 12).
/// The map is an involution.
fn lex_to_published(v: &Vector6<f64>) -> [f64; 6] {
    [v[0], v[1], v[2], v[5], -v[4], v[3]]
}

fn published_to_lex(v: &[f64; 6]) -> Vector6<f64> {
    Vector6::new(v[0], v[1], v[2], v[5], -v[4], v[3])
}

/// Metric adjoint of a linear map on p-forms (p = 1..3), defined by
/// α ∧ ⋆T(β) = β ∧ ⋆T†(α), i.e. T† = Ĝ⁻¹ Tᵀ Ĝ with Ĝ the diagonal basis
/// metric on p-forms.
pub fn adjoint_map(m: &DMatrix<f64>, degree: usize) -> DMatrix<f64> {
    assert!((1..=3).contains(&degree), "adjoint defined for p = 1..3");
    let metric: Vec<f64> = match degree {
        1 => ETA.to_vec(),
        2 => TWO_FORM_METRIC.to_vec(),
        3 => {
            // lexicographic 3-form basis (012, 013, 023, 123)
            vec![-1.0, -1.0, -1.0, 1.0]
        }
        _ => unreachable!(),
    };
    let n = metric.len();
    assert_eq!(m.nrows(), n);
    assert_eq!(m.ncols(), n);
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = metric[i] * m[(j, i)] * metric[j];
        }
    }
    out
}

/// Metric adjoint of a map on 1-forms: T† = η Tᵀ η.
pub fn adjoint_one_form_map(m: &Matrix4<f64>) -> Matrix4<f64> {
    let mut out = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = ETA[i] * m[(j, i)] * ETA[j];
        }
    }
    out
}

/// A linear constitutive map on 2-forms, G = Z(F).
#[derive(Debug, Clone, PartialEq)]
pub struct ConstitutiveZ {
    /// Action on lexicographic 2-form components.
    lex: Matrix6<f64>,
}

impl ConstitutiveZ {
    /// The vacuum relation G = F.
    pub fn identity() -> Self {
        ConstitutiveZ {
            lex: Matrix6::identity(),
        }
    }

    /// Build from the 6×6 component matrix in the published basis order
    /// (01, 02, 03, 23, 31, 12).
    pub fn from_matrix6(m: &[[f64; 6]; 6]) -> Self {
        let mut lex = Matrix6::zeros();
        // column j of the published matrix is the image of published basis
        // vector j; convert both sides of the conjugation explicitly
        for j in 0..6 {
            let mut pub_col = [0.0; 6];
            for (i, row) in m.iter().enumerate() {
                pub_col[i] = row[j];
            }
            // published basis vector j as lex components
            let mut unit = [0.0; 6];
            unit[j] = 1.0;
            let src = published_to_lex(&unit);
            let img = published_to_lex(&pub_col);
            // lex * src = img, with src a signed unit vector
            let (idx, sign) = src
                .iter()
                .enumerate()
                .find(|(_, v)| v.abs() > 0.5)
                .map(|(i, v)| (i, *v))
                .expect("signed permutation");
            for r in 0..6 {
                lex[(r, idx)] = img[r] * sign;
            }
        }
        ConstitutiveZ { lex }
    }

    /// Component matrix in the published basis order (01, 02, 03, 23, 31, 12).
    pub fn matrix6(&self) -> [[f64; 6]; 6] {
        let mut out = [[0.0; 6]; 6];
        for j in 0..6 {
            let mut unit = [0.0; 6];
            unit[j] = 1.0;
            let src = published_to_lex(&unit);
            let img = lex_to_published(&(self.lex * src));
            for (i, row) in out.iter_mut().enumerate() {
                row[j] = img[i];
            }
        }
        out
    }

    pub fn apply(&self, f: &PForm) -> PForm {
        assert_eq!(f.degree(), 2, "constitutive map acts on 2-forms");
        let v = Vector6::from_row_slice(f.components());
        let out = self.lex * v;
        PForm::from_components(2, out.as_slice())
    }

    /// Metric adjoint Z†.
    pub fn adjoint(&self) -> ConstitutiveZ {
        let mut lex = Matrix6::zeros();
        for i in 0..6 {
            for j in 0..6 {
                lex[(i, j)] = TWO_FORM_METRIC[i] * self.lex[(j, i)] * TWO_FORM_METRIC[j];
            }
        }
        ConstitutiveZ { lex }
    }

    /// ½(Z + Z†), the self-adjoint part.
    pub fn self_adjoint_part(&self) -> ConstitutiveZ {
        let adj = self.adjoint();
        ConstitutiveZ {
            lex: (self.lex + adj.lex) * 0.5,
        }
    }

    /// Largest component deviation from self-adjointness.
    pub fn self_adjoint_violation(&self) -> f64 {
        (self.lex - self.adjoint().lex).abs().max()
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.lex.iter().map(|v| v * v).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.lex.abs().max()
    }

    /// Components of Z in a Lorentz-transformed frame.
    pub fn in_frame(&self, l: &LorentzTransform) -> ConstitutiveZ {
        let p = l.two_form_basis_change();
        let p_inv = p.try_inverse().expect("invertible 2-form basis change");
        ConstitutiveZ {
            lex: p_inv * self.lex * p,
        }
    }

    /// Scale all components.
    pub fn scale(&self, s: f64) -> ConstitutiveZ {
        ConstitutiveZ { lex: self.lex * s }
    }

    /// Componentwise sum.
    pub fn add(&self, other: &ConstitutiveZ) -> ConstitutiveZ {
        ConstitutiveZ {
            lex: self.lex + other.lex,
        }
    }
}

/// Self-adjointness check: the boolean verdict at the documented tolerance
/// together with the raw violation.
pub fn is_self_adjoint(z: &ConstitutiveZ) -> (bool, f64) {
    let violation = z.self_adjoint_violation();
    let scale = z.max_abs().max(1.0);
    (violation <= 1e-12 * scale, violation)
}

pub(crate) fn require_self_adjoint(z: &ConstitutiveZ, what: &'static str) -> Result<()> {
    let violation = z.self_adjoint_violation();
    let scale = z.max_abs().max(1.0);
    if violation > 1e-10 * scale {
        return Err(CoreError::NotSelfAdjoint { what, violation });
    }
    Ok(())
}

/// The four spatial maps relating (d, h) to (e, b) with respect to a
/// medium velocity: d = zde(e) + zdb(b), h = zhe(e) + zhb(b).
/// Matrices act on 1-form components.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaBlocks {
    pub zde: Matrix4<f64>,
    pub zdb: Matrix4<f64>,
    pub zhe: Matrix4<f64>,
    pub zhb: Matrix4<f64>,
    pub velocity: Velocity,
}

impl ZetaBlocks {
    /// Vacuum blocks relative to a velocity: zde = zhb = π_V, zdb = zhe = 0.
    pub fn vacuum(v: &Velocity) -> ZetaBlocks {
        let p = projector_matrix(v);
        ZetaBlocks {
            zde: p,
            zdb: Matrix4::zeros(),
            zhe: Matrix4::zeros(),
            zhb: p,
            velocity: *v,
        }
    }

    /// Largest violation of spatiality (ζ(Ṽ) = 0 and i_V ζ(α) = 0) over
    /// the four blocks.
    pub fn spatiality_violation(&self) -> f64 {
        let vd = self.velocity.dual();
        let vdc = NaVector4::new(
            vd.components()[0],
            vd.components()[1],
            vd.components()[2],
            vd.components()[3],
        );
        let vv = self.velocity.vector().0;
        let mut worst = 0.0f64;
        for m in [&self.zde, &self.zdb, &self.zhe, &self.zhb] {
            let img = m * vdc;
            worst = worst.max(img.abs().max());
            for j in 0..4 {
                let contraction: f64 = (0..4).map(|a| vv[a] * m[(a, j)]).sum();
                worst = worst.max(contraction.abs());
            }
        }
        worst
    }

    /// Largest violation of the adjoint relations zde† = zde, zhb† = zhb,
    /// zdb† = −zhe.
    pub fn adjoint_violation(&self) -> f64 {
        let mut worst = (adjoint_one_form_map(&self.zde) - self.zde).abs().max();
        worst = worst.max((adjoint_one_form_map(&self.zhb) - self.zhb).abs().max());
        worst = worst.max((adjoint_one_form_map(&self.zdb) + self.zhe).abs().max());
        worst
    }

    fn max_abs(&self) -> f64 {
        [&self.zde, &self.zdb, &self.zhe, &self.zhb]
            .iter()
            .map(|m| m.abs().max())
            .fold(0.0, f64::max)
    }

    fn validate(&self) -> Result<()> {
        let scale = self.max_abs().max(1.0);
        let sp = self.spatiality_violation();
        if sp > 1e-10 * scale {
            return Err(CoreError::NonSpatial {
                what: "zeta blocks",
                violation: sp,
            });
        }
        let adj = self.adjoint_violation();
        if adj > 1e-10 * scale {
            return Err(CoreError::NotSelfAdjoint {
                what: "zeta blocks",
                violation: adj,
            });
        }
        Ok(())
    }

    fn apply(m: &Matrix4<f64>, alpha: &PForm) -> PForm {
        assert_eq!(alpha.degree(), 1);
        let v = NaVector4::from_row_slice(alpha.components());
        let out = m * v;
        PForm::from_components(1, out.as_slice())
    }
}

/// Component matrix of the spatial projector π_V = Id + Ṽ ⊗ V on 1-forms.
pub fn projector_matrix(v: &Velocity) -> Matrix4<f64> {
    let vd = v.dual();
    let mut m = Matrix4::identity();
    for a in 0..4 {
        for b in 0..4 {
            // (π α)_a = α_a + Ṽ_a α(V): column b of Ṽ ⊗ V is Ṽ_a V^b
            m[(a, b)] += vd.components()[a] * v.vector().0[b];
        }
    }
    m
}

/// Spatial projector applied to a 1-form.
pub fn project_spatial(alpha: &PForm, v: &Velocity) -> PForm {
    assert_eq!(alpha.degree(), 1);
    let pairing: f64 = (0..4).map(|a| alpha.components()[a] * v.vector().0[a]).sum();
    *alpha + v.dual().scale(pairing)
}

/// Isotropic medium with relative permittivity `eps` and permeability `mu`
/// at rest in the frame of `v`:
/// Z(F) = ε i_V F ∧ Ṽ − μ⁻¹ ⋆(i_V ⋆F ∧ Ṽ),
/// which comoving gives d = ε e and h = b/μ.
pub fn build_isotropic(eps: f64, mu: f64, v: &Velocity) -> Result<ConstitutiveZ> {
    if mu == 0.0 {
        return Err(CoreError::InvalidArgument(
            "permeability must be nonzero".into(),
        ));
    }
    let p = projector_matrix(v);
    let blocks = ZetaBlocks {
        zde: p * eps,
        zdb: Matrix4::zeros(),
        zhe: Matrix4::zeros(),
        zhb: p / mu,
        velocity: *v,
    };
    build_from_zeta(&blocks)
}

/// Anisotropic non-magneto-electric medium from spatial, self-adjoint
/// permittivity and inverse-permeability maps on 1-forms:
/// Z(F) = ε(i_V F) ∧ Ṽ − ⋆(μ⁻¹(i_V ⋆F) ∧ Ṽ),
/// comoving d = ε(e), h = μ⁻¹(b).
pub fn build_anisotropic(
    eps: &Matrix4<f64>,
    mu_inv: &Matrix4<f64>,
    v: &Velocity,
) -> Result<ConstitutiveZ> {
    let blocks = ZetaBlocks {
        zde: *eps,
        zdb: Matrix4::zeros(),
        zhe: Matrix4::zeros(),
        zhb: *mu_inv,
        velocity: *v,
    };
    build_from_zeta(&blocks)
}

/// Assemble Z from its spatial blocks:
/// Z(F) = zde(i_V F)∧Ṽ + zdb(i_V ⋆F)∧Ṽ − ⋆(zhe(i_V F)∧Ṽ) − ⋆(zhb(i_V ⋆F)∧Ṽ).
pub fn build_from_zeta(blocks: &ZetaBlocks) -> Result<ConstitutiveZ> {
    blocks.validate()?;
    let v = &blocks.velocity;
    let vd = v.dual();
    let mut lex = Matrix6::zeros();
    for (col, &(a, b)) in BASIS_2.iter().enumerate() {
        let f = PForm::basis_two_form(a, b);
        let e_part = f.interior(v.vector());
        let b_part = f.hodge().interior(v.vector());
        let image = ZetaBlocks::apply(&blocks.zde, &e_part).wedge(&vd)
            + ZetaBlocks::apply(&blocks.zdb, &b_part).wedge(&vd)
            - ZetaBlocks::apply(&blocks.zhe, &e_part).wedge(&vd).hodge()
            - ZetaBlocks::apply(&blocks.zhb, &b_part).wedge(&vd).hodge();
        for (row, &c) in image.components().iter().enumerate() {
            lex[(row, col)] = c;
        }
    }
    Ok(ConstitutiveZ { lex })
}

/// Decompose Z relative to a medium velocity:
/// zde(ξ) = i_V Z(ξ∧Ṽ),  zdb(ξ) = −i_V Z(⋆(ξ∧Ṽ)),
/// zhe(ξ) = i_V ⋆Z(ξ∧Ṽ), zhb(ξ) = −i_V ⋆Z(⋆(ξ∧Ṽ)).
/// Inverse of [`build_from_zeta`] for every Z.
pub fn extract_zeta(z: &ConstitutiveZ, v: &Velocity) -> ZetaBlocks {
    let vd = v.dual();
    let mut zde = Matrix4::zeros();
    let mut zdb = Matrix4::zeros();
    let mut zhe = Matrix4::zeros();
    let mut zhb = Matrix4::zeros();
    for col in 0..4 {
        let xi = Frame::basis_one_form(col);
        let plane = xi.wedge(&vd);
        let plane_dual = plane.hodge();
        let de = z.apply(&plane).interior(v.vector());
        let db = z.apply(&plane_dual).interior(v.vector()).scale(-1.0);
        let he = z.apply(&plane).hodge().interior(v.vector());
        let hb = z.apply(&plane_dual).hodge().interior(v.vector()).scale(-1.0);
        for row in 0..4 {
            zde[(row, col)] = de.components()[row];
            zdb[(row, col)] = db.components()[row];
            zhe[(row, col)] = he.components()[row];
            zhb[(row, col)] = hb.components()[row];
        }
    }
    ZetaBlocks {
        zde,
        zdb,
        zhe,
        zhb,
        velocity: *v,
    }
}

/// Frobenius norm squared of the magneto-electric block zdb of Z seen from
/// the frame of `v`; the classifier objective.
pub fn magneto_electric_norm_sq(z: &ConstitutiveZ, v: &Velocity) -> f64 {
    let vd = v.dual();
    let mut acc = 0.0;
    for col in 0..4 {
        let xi = Frame::basis_one_form(col);
        let plane_dual = xi.wedge(&vd).hodge();
        let db = z.apply(&plane_dual).interior(v.vector());
        acc += db.components().iter().map(|c| c * c).sum::<f64>();
    }
    acc
}

/// The Post invariant χ = i_a i_b ⋆(Z(e^a ∧ e^b)), summed over all ordered
/// index pairs. A frame scalar.
pub fn post_invariant(z: &ConstitutiveZ) -> f64 {
    let mut acc = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            if a == b {
                continue;
            }
            let image = z.apply(&PForm::basis_two_form(a, b)).hodge();
            acc += image
                .interior(&Frame::basis_vector(b))
                .interior(&Frame::basis_vector(a))
                .components()[0];
        }
    }
    acc
}

/// Convention constant relating the defining sum to the block-trace form:
/// for self-adjoint Z, χ = POST_TRACE_CONSTANT · 4 i_a zdb(e^a) for any
/// medium velocity. With this crate's orientation and signature the factor
/// is exactly 1.
pub const POST_TRACE_CONSTANT: f64 = 1.0;

/// χ evaluated through the magneto-electric block trace relative to any
/// velocity: 4 i_a zdb(e^a) (times the recorded constant). Agrees with
/// [`post_invariant`] for self-adjoint Z.
pub fn post_invariant_via_zeta(z: &ConstitutiveZ, v: &Velocity) -> f64 {
    let blocks = extract_zeta(z, v);
    POST_TRACE_CONSTANT * 4.0 * blocks.zdb.trace()
}

/// Constraint sets for the component count of a constitutive tensor.
#[derive(Debug, Clone)]
pub enum ComponentConstraints {
    /// Pair antisymmetry only (encoded by the basis): 36.
    None,
    /// Self-adjoint: 21.
    SelfAdjoint,
    /// Self-adjoint and non-magneto-electric comoving with the given
    /// velocity (zdb = zhe = 0): 12.
    SelfAdjointNonMagnetoElectric(Velocity),
}

/// Dimension of the linear solution space of the given constraints inside
/// the 36-component space, computed by numerical rank.
pub fn count_free_components(constraints: &ComponentConstraints) -> usize {
    let mut rows: Vec<[f64; 36]> = Vec::new();

    // basis of the 36-dimensional space: single entries of the lex matrix
    let basis_z = |k: usize| -> ConstitutiveZ {
        let mut lex = Matrix6::zeros();
        lex[(k / 6, k % 6)] = 1.0;
        ConstitutiveZ { lex }
    };

    let add_linear_rows = |rows: &mut Vec<[f64; 36]>, functional: &dyn Fn(&ConstitutiveZ) -> Vec<f64>| {
        let m = functional(&basis_z(0)).len();
        let mut cols = vec![[0.0; 36]; m];
        for k in 0..36 {
            let vals = functional(&basis_z(k));
            for (i, v) in vals.into_iter().enumerate() {
                cols[i][k] = v;
            }
        }
        rows.extend(cols);
    };

    match constraints {
        ComponentConstraints::None => {}
        ComponentConstraints::SelfAdjoint => {
            add_linear_rows(&mut rows, &|z| {
                let d = z.lex - z.adjoint().lex;
                d.iter().copied().collect()
            });
        }
        ComponentConstraints::SelfAdjointNonMagnetoElectric(v) => {
            add_linear_rows(&mut rows, &|z| {
                let d = z.lex - z.adjoint().lex;
                d.iter().copied().collect()
            });
            let v = *v;
            add_linear_rows(&mut rows, &|z| {
                let blocks = extract_zeta(z, &v);
                blocks
                    .zdb
                    .iter()
                    .chain(blocks.zhe.iter())
                    .copied()
                    .collect()
            });
        }
    }

    if rows.is_empty() {
        return 36;
    }
    let m = DMatrix::from_fn(rows.len(), 36, |i, j| rows[i][j]);
    let svd = m.svd(false, false);
    let sigma_max = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > 1e-10 * sigma_max.max(1.0))
        .count();
    36 - rank
}

/// Verdict of the intrinsic magneto-electric search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Some medium velocity removes the cross couplings.
    NotIntrinsic,
    /// No velocity in the searched family removes them; the reported
    /// residual is the observed lower bound.
    Intrinsic,
    /// No restart converged.
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NotIntrinsic => "NOT_INTRINSIC",
            Verdict::Intrinsic => "INTRINSIC",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

/// Search options for [`classify_intrinsic`].
#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Rapidity grid spans [−half_width, half_width]³.
    pub grid_half_width: f64,
    /// Grid points per axis.
    pub grid_per_axis: usize,
    /// Iteration cap per local refinement.
    pub max_iters: usize,
    /// Verdict threshold relative to ‖Z‖²_F.
    pub tol_rel: f64,
    /// Seed recorded in reports; the search itself is deterministic.
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            grid_half_width: 2.0,
            grid_per_axis: 3,
            max_iters: 500,
            tol_rel: 1e-10,
            seed: 0,
        }
    }
}

/// Classification result with search diagnostics.
#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    /// Rapidity of the best candidate rest frame.
    pub best_rapidity: [f64; 3],
    /// Minimum of ‖zdb‖²_F over all restarts.
    pub residual: f64,
    /// Threshold the residual was compared against.
    pub threshold: f64,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub evals: usize,
}

/// Decide whether Z is intrinsically magneto-electric by minimizing
/// ‖zdb‖²_F over medium rapidities w with V(w) = (cosh‖w‖, sinh‖w‖ ŵ).
///
/// Deterministic multistart: a grid of restarts refined by a simplex
/// search, merged by minimum with the lowest restart index winning ties.
pub fn classify_intrinsic(z: &ConstitutiveZ, opts: &ClassifyOptions) -> Result<Classification> {
    require_self_adjoint(z, "constitutive tensor for classification")?;
    let objective = |w: &[f64]| {
        let v = Velocity::from_rapidity(&[w[0], w[1], w[2]]);
        magneto_electric_norm_sq(z, &v)
    };

    let n = opts.grid_per_axis.max(1);
    let coords: Vec<f64> = (0..n)
        .map(|i| {
            if n == 1 {
                0.0
            } else {
                -opts.grid_half_width + 2.0 * opts.grid_half_width * i as f64 / (n - 1) as f64
            }
        })
        .collect();

    let nm_opts = NelderMeadOptions {
        max_iters: opts.max_iters,
        xtol: 1e-9,
        ftol: 0.0,
        init_step: 0.25,
    };

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut restarts = 0usize;
    let mut converged = 0usize;
    let mut evals = 0usize;
    for &wx in &coords {
        for &wy in &coords {
            for &wz in &coords {
                restarts += 1;
                let r = nelder_mead(objective, &[wx, wy, wz], &nm_opts);
                evals += r.evals;
                if r.converged {
                    converged += 1;
                }
                let better = match &best {
                    None => true,
                    Some((fbest, _)) => r.fx < *fbest,
                };
                if better {
                    best = Some((r.fx, r.x));
                }
            }
        }
    }
    // final polish from the global best
    let (mut best_f, mut best_w) = best.expect("at least one restart");
    let polish = nelder_mead(
        objective,
        &best_w,
        &NelderMeadOptions {
            max_iters: opts.max_iters,
            xtol: 1e-12,
            ftol: 0.0,
            init_step: 1e-3,
        },
    );
    evals += polish.evals;
    if polish.fx < best_f {
        best_f = polish.fx;
        best_w = polish.x;
    }

    let threshold = opts.tol_rel * z.frobenius_norm_sq();
    let verdict = if converged == 0 {
        Verdict::Undecided
    } else if best_f < threshold {
        Verdict::NotIntrinsic
    } else {
        Verdict::Intrinsic
    };
    Ok(Classification {
        verdict,
        best_rapidity: [best_w[0], best_w[1], best_w[2]],
        residual: best_f,
        threshold,
        restarts,
        converged_restarts: converged,
        evals,
    })
}

/// The worked magneto-electric example with vanishing Post invariant:
/// Z(F) = F_23 e^0∧e^1 + F_13 e^0∧e^2 − F_02 e^1∧e^3 − F_01 e^2∧e^3.
/// Self-adjoint, χ = 0, yet no medium velocity removes the cross couplings.
pub fn null_post_magneto_electric_example() -> ConstitutiveZ {
    let mut lex = Matrix6::zeros();
    let pos = |a: usize, b: usize| BASIS_2.iter().position(|&p| p == (a, b)).unwrap();
    lex[(pos(0, 1), pos(2, 3))] = 1.0; // F_23 e^01
    lex[(pos(0, 2), pos(1, 3))] = 1.0; // F_13 e^02
    lex[(pos(1, 3), pos(0, 2))] = -1.0; // −F_02 e^13
    lex[(pos(2, 3), pos(0, 1))] = -1.0; // −F_01 e^23
    ConstitutiveZ { lex }
}

/// Builder bypassing the adjoint-relation validation, for round trips on
/// arbitrary (not self-adjoint) Z. Spatiality is still assumed.
#[cfg(test)]
fn build_from_zeta_unchecked(blocks: &ZetaBlocks) -> ConstitutiveZ {
    let v = &blocks.velocity;
    let vd = v.dual();
    let mut lex = Matrix6::zeros();
    for (col, &(a, b)) in BASIS_2.iter().enumerate() {
        let f = PForm::basis_two_form(a, b);
        let e_part = f.interior(v.vector());
        let b_part = f.hodge().interior(v.vector());
        let image = ZetaBlocks::apply(&blocks.zde, &e_part).wedge(&vd)
            + ZetaBlocks::apply(&blocks.zdb, &b_part).wedge(&vd)
            - ZetaBlocks::apply(&blocks.zhe, &e_part).wedge(&vd).hodge()
            - ZetaBlocks::apply(&blocks.zhb, &b_part).wedge(&vd).hodge();
        for (row, &c) in image.components().iter().enumerate() {
            lex[(row, col)] = c;
        }
    }
    ConstitutiveZ { lex }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{decompose_f, decompose_g};
    use crate::sampling::{
        random_constitutive, random_form, random_rapidity, random_self_adjoint_constitutive,
        random_velocity,
    };
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mat_close(a: &Matrix4<f64>, b: &Matrix4<f64>, tol: f64) -> bool {
        (a - b).abs().max() <= tol
    }

    #[test]
    fn adjoint_of_identity_and_double_adjoint() {
        let id = DMatrix::<f64>::identity(6, 6);
        assert_eq!(adjoint_map(&id, 2), id);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for degree in 1..=3usize {
            let n = [0, 4, 6, 4][degree];
            let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let twice = adjoint_map(&adjoint_map(&m, degree), degree);
            assert!((twice - &m).abs().max() <= 1e-13);
        }
    }

    #[test]
    fn adjoint_defining_relation_on_basis_pairs() {
        // brute force: α∧⋆T(β) = β∧⋆T†(α) on all basis pairs, each degree
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for degree in 1..=3usize {
            let n = [0, 4, 6, 4][degree];
            let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let adj = adjoint_map(&m, degree);
            let apply = |mm: &DMatrix<f64>, f: &PForm| -> PForm {
                let v: Vec<f64> = (0..n)
                    .map(|i| (0..n).map(|j| mm[(i, j)] * f.components()[j]).sum())
                    .collect();
                PForm::from_components(degree, &v)
            };
            for i in 0..n {
                for j in 0..n {
                    let mut ca = vec![0.0; n];
                    ca[i] = 1.0;
                    let mut cb = vec![0.0; n];
                    cb[j] = 1.0;
                    let alpha = PForm::from_components(degree, &ca);
                    let beta = PForm::from_components(degree, &cb);
                    let lhs = alpha.wedge(&apply(&m, &beta).hodge());
                    let rhs = beta.wedge(&apply(&adj, &alpha).hodge());
                    assert!((lhs - rhs).max_abs() <= 1e-13);
                }
            }
        }
    }

    #[test]
    fn single_entry_one_form_map_adjoint_has_metric_signs() {
        // T = e^1 ⊗ X_2 style single entry: T(e^2) = e^1, zero otherwise
        let mut m = Matrix4::zeros();
        m[(1, 2)] = 1.0;
        let adj = adjoint_one_form_map(&m);
        let mut expected = Matrix4::zeros();
        expected[(2, 1)] = ETA[2] * ETA[1]; // transpose with η signs
        assert!(mat_close(&adj, &expected, 0.0));
        // and a time-mixing entry flips sign
        let mut m = Matrix4::zeros();
        m[(0, 3)] = 1.0;
        let adj = adjoint_one_form_map(&m);
        let mut expected = Matrix4::zeros();
        expected[(3, 0)] = ETA[3] * ETA[0];
        assert!(mat_close(&adj, &expected, 0.0));
    }

    #[test]
    fn isotropic_medium_comoving_fields() {
        let rest = Velocity::rest();
        // vacuum limit: d = e, h = b
        let z = build_isotropic(1.0, 1.0, &rest).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..20 {
            let f = random_form(&mut rng, 2);
            assert!((z.apply(&f) - f).max_abs() <= 1e-14);
        }

        // ε = 2: comoving d = 2e for F = e^0∧e^1
        let z = build_isotropic(2.0, 1.0, &rest).unwrap();
        let f = Frame::basis_one_form(0).wedge(&Frame::basis_one_form(1));
        let g = z.apply(&f);
        let fd = decompose_f(&f, &rest);
        let gd = decompose_g(&g, &rest);
        assert!((gd.e - fd.e.scale(2.0)).max_abs() <= 1e-14);
        assert!((gd.b - fd.b).max_abs() <= 1e-14);

        // self-adjoint for random ε, μ, V
        for _ in 0..30 {
            let eps = rng.gen_range(0.3..4.0);
            let mu = rng.gen_range(0.3..4.0);
            let v = random_velocity(&mut rng, 1.2);
            let z = build_isotropic(eps, mu, &v).unwrap();
            let (ok, violation) = is_self_adjoint(&z);
            assert!(ok, "violation {violation}");
            // comoving decomposition recovers ε and 1/μ
            let f = random_form(&mut rng, 2);
            let g = z.apply(&f);
            let fd = decompose_f(&f, &v);
            let gd = decompose_g(&g, &v);
            assert!((gd.e - fd.e.scale(eps)).max_abs() <= 1e-12);
            assert!((gd.b - fd.b.scale(1.0 / mu)).max_abs() <= 1e-12);
        }

        assert!(build_isotropic(2.0, 0.0, &rest).is_err());
    }

    #[test]
    fn anisotropic_medium_diagonal_permittivity() {
        let rest = Velocity::rest();
        let mut eps = Matrix4::zeros();
        eps[(1, 1)] = 2.0;
        eps[(2, 2)] = 3.0;
        eps[(3, 3)] = 4.0;
        let mu_inv = projector_matrix(&rest);
        let z = build_anisotropic(&eps, &mu_inv, &rest).unwrap();
        // comoving d components (2e_1, 3e_2, 4e_3)
        let e = PForm::from_components(1, &[0.0, 1.0, 1.0, 1.0]);
        let f = e.wedge(&rest.dual());
        let d = decompose_g(&z.apply(&f), &rest).e;
        assert!((d - PForm::from_components(1, &[0.0, 2.0, 3.0, 4.0])).max_abs() <= 1e-13);
        let (ok, _) = is_self_adjoint(&z);
        assert!(ok);

        // ε = μ⁻¹ = π_V reduces to vacuum
        let p = projector_matrix(&rest);
        let z = build_anisotropic(&p, &p, &rest).unwrap();
        let idz = ConstitutiveZ::identity();
        assert!((z.lex - idz.lex).abs().max() <= 1e-14);

        // non-spatial input rejected
        let mut bad = Matrix4::identity();
        bad[(0, 0)] = 1.0;
        assert!(build_anisotropic(&bad, &p, &rest).is_err());
        // non-self-adjoint spatial input rejected
        let mut skew = Matrix4::zeros();
        skew[(1, 2)] = 1.0;
        skew[(2, 1)] = -1.0;
        assert!(build_anisotropic(&skew, &p, &rest).is_err());
    }

    #[test]
    fn zeta_round_trip_and_vacuum_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        // vacuum blocks build the identity
        let v = random_velocity(&mut rng, 1.0);
        let z = build_from_zeta(&ZetaBlocks::vacuum(&v)).unwrap();
        assert!((z.lex - ConstitutiveZ::identity().lex).abs().max() <= 1e-13);

        // extraction of vacuum for any boost gives projector blocks
        let blocks = extract_zeta(&ConstitutiveZ::identity(), &v);
        let p = projector_matrix(&v);
        assert!(mat_close(&blocks.zde, &p, 1e-13));
        assert!(mat_close(&blocks.zhb, &p, 1e-13));
        assert!(blocks.zdb.abs().max() <= 1e-13);
        assert!(blocks.zhe.abs().max() <= 1e-13);

        // build ∘ extract = id on arbitrary Z (pair antisymmetry only)
        for _ in 0..100 {
            let z = random_constitutive(&mut rng);
            let v = random_velocity(&mut rng, 1.2);
            let blocks = extract_zeta(&z, &v);
            // blocks of an arbitrary Z are spatial but need not satisfy the
            // adjoint relations, so bypass validation through the raw builder
            let rebuilt = {
                let relaxed = ZetaBlocks { ..blocks.clone() };
                assert!(relaxed.spatiality_violation() <= 1e-12 * relaxed.max_abs().max(1.0));
                build_from_zeta_unchecked(&relaxed)
            };
            assert!((rebuilt.lex - z.lex).abs().max() <= 1e-12);
        }
    }

    #[test]
    fn extraction_satisfies_block_invariants_for_self_adjoint_z() {
        let mut rng = ChaCha8Rng::seed_from_u64(49);
        for _ in 0..100 {
            let z = random_self_adjoint_constitutive(&mut rng);
            let v = random_velocity(&mut rng, 1.2);
            let blocks = extract_zeta(&z, &v);
            let scale = blocks.max_abs().max(1.0);
            assert!(blocks.spatiality_violation() <= 1e-12 * scale);
            assert!(blocks.adjoint_violation() <= 1e-12 * scale);
            // zdb = −zhe† explicitly
            let lhs = blocks.zdb;
            let rhs = -adjoint_one_form_map(&blocks.zhe);
            assert!(mat_close(&lhs, &rhs, 1e-12 * scale));
        }
    }

    #[test]
    fn boosted_isotropic_medium_shows_motion_induced_cross_coupling() {
        let v = Velocity::from_rapidity(&[0.7, 0.0, 0.0]);
        let z = build_isotropic(2.0, 1.0, &v).unwrap();
        let blocks = extract_zeta(&z, &Velocity::rest());
        assert!(blocks.zdb.abs().max() > 1e-2);
    }

    #[test]
    fn worked_example_blocks_and_self_adjointness() {
        let z = null_post_magneto_electric_example();
        let (ok, violation) = is_self_adjoint(&z);
        assert!(ok, "violation {violation}");

        // comoving blocks: zdb(ξ) = (i_1 ξ) e^1 − (i_2 ξ) e^2
        let blocks = extract_zeta(&z, &Velocity::rest());
        let mut expected = Matrix4::zeros();
        expected[(1, 1)] = 1.0;
        expected[(2, 2)] = -1.0;
        assert!(mat_close(&blocks.zdb, &expected, 1e-14));
        assert!(mat_close(&blocks.zhe, &(-expected), 1e-14));

        // round trip through the builder
        let rebuilt = build_from_zeta(&blocks).unwrap();
        assert!((rebuilt.lex - z.lex).abs().max() <= 1e-13);
    }

    #[test]
    fn self_adjointness_checks() {
        assert!(is_self_adjoint(&ConstitutiveZ::identity()).0);
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let z = random_constitutive(&mut rng);
        assert!(!is_self_adjoint(&z).0); // generically false
        assert!(is_self_adjoint(&z.self_adjoint_part()).0);
    }

    #[test]
    fn component_counts() {
        assert_eq!(count_free_components(&ComponentConstraints::None), 36);
        assert_eq!(count_free_components(&ComponentConstraints::SelfAdjoint), 21);
        let v = Velocity::from_rapidity(&[0.3, -0.1, 0.2]);
        assert_eq!(
            count_free_components(&ComponentConstraints::SelfAdjointNonMagnetoElectric(v)),
            12
        );
    }

    #[test]
    fn post_invariant_cases() {
        assert_eq!(post_invariant(&ConstitutiveZ::identity()), 0.0);
        assert_eq!(post_invariant(&null_post_magneto_electric_example()), 0.0);

        // self-adjoint medium with zdb = π_V: χ = 4 · trace = 12
        let rest = Velocity::rest();
        let p = projector_matrix(&rest);
        let blocks = ZetaBlocks {
            zde: Matrix4::zeros(),
            zdb: p,
            zhe: -p, // zdb† = −zhe
            zhb: Matrix4::zeros(),
            velocity: rest,
        };
        let z = build_from_zeta(&blocks).unwrap();
        let chi = post_invariant(&z);
        assert!((chi - 12.0 * POST_TRACE_CONSTANT).abs() <= 1e-12);
        let chi2 = post_invariant_via_zeta(&z, &rest);
        assert!((chi - chi2).abs() <= 1e-12);
    }

    #[test]
    fn post_invariant_two_routes_agree_for_self_adjoint_z() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..100 {
            let z = random_self_adjoint_constitutive(&mut rng);
            let v = random_velocity(&mut rng, 1.0);
            let a = post_invariant(&z);
            let b = post_invariant_via_zeta(&z, &v);
            assert!((a - b).abs() <= 1e-10 * z.max_abs().max(1.0));
        }
    }

    #[test]
    fn post_invariant_is_frame_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for _ in 0..20 {
            let z = random_self_adjoint_constitutive(&mut rng);
            let chi = post_invariant(&z);
            let w = random_rapidity(&mut rng, 1.0);
            let axis = random_rapidity(&mut rng, 1.0);
            let angle = rng.gen_range(-3.0..3.0);
            let l = LorentzTransform::boost(&w).compose(&LorentzTransform::rotation(&axis, angle));
            let z2 = z.in_frame(&l);
            assert!((post_invariant(&z2) - chi).abs() <= 1e-10 * z.max_abs().max(1.0));
        }
    }

    #[test]
    fn classifier_on_vacuum_and_boosted_media() {
        let opts = ClassifyOptions::default();
        // vacuum: not intrinsic, residual 0
        let c = classify_intrinsic(&ConstitutiveZ::identity(), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::NotIntrinsic);
        assert!(c.residual <= 1e-20);

        // isotropic medium built at a boosted frame: recover the frame
        let w_true = [0.4, -0.7, 0.2];
        let v = Velocity::from_rapidity(&w_true);
        let z = build_isotropic(2.0, 3.0, &v).unwrap();
        let c = classify_intrinsic(&z, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::NotIntrinsic);
        for i in 0..3 {
            assert!(
                (c.best_rapidity[i] - w_true[i]).abs() <= 1e-5,
                "recovered {:?} vs {:?}",
                c.best_rapidity,
                w_true
            );
        }

        // the worked example is intrinsic with a solid lower bound
        let c = classify_intrinsic(&null_post_magneto_electric_example(), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Intrinsic);
        assert!(c.residual > 1e-3);

        // non-self-adjoint input rejected
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        let bad = random_constitutive(&mut rng);
        assert!(classify_intrinsic(&bad, &opts).is_err());
    }

    #[test]
    fn classifier_is_deterministic() {
        let z = null_post_magneto_electric_example();
        let opts = ClassifyOptions::default();
        let a = classify_intrinsic(&z, &opts).unwrap();
        let b = classify_intrinsic(&z, &opts).unwrap();
        assert_eq!(a.best_rapidity, b.best_rapidity);
        assert_eq!(a.residual, b.residual);
    }

    #[test]
    fn spatial_projector_is_idempotent_and_kills_the_velocity_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(58);
        for _ in 0..50 {
            let v = random_velocity(&mut rng, 1.3);
            let p = projector_matrix(&v);
            assert!(((p * p) - p).abs().max() <= 1e-13);
            let killed = project_spatial(&v.dual(), &v);
            assert!(killed.max_abs() <= 1e-13);
            // projection agrees with the matrix action on random 1-forms
            let alpha = random_form(&mut rng, 1);
            let via_matrix = ZetaBlocks::apply(&p, &alpha);
            assert!((project_spatial(&alpha, &v) - via_matrix).max_abs() <= 1e-14);
        }
    }

    #[test]
    fn published_matrix_order_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let z = random_constitutive(&mut rng);
        let m = z.matrix6();
        let back = ConstitutiveZ::from_matrix6(&m);
        assert!((back.lex - z.lex).abs().max() <= 1e-15);
    }
}
