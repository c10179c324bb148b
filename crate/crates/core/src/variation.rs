//! One-parameter coframe families and the variational machinery: lifted
//! Hodge duals, lifted medium velocity and spatial blocks, the action
//! density, its analytic ⋆-derivative, and the finite-difference check
//! that the action derivative is reproduced by the drive forms,
//! Λ̇ = ė^a ∧ τ_a.
//!
//! Everything is pointwise: the action density is a 4-form at a point and
//! the identity above holds pointwise, so no integration is involved.

use nalgebra::Matrix4;

use crate::error::{CoreError, Result};
use crate::exterior::{Frame, PForm, Vector4, COMP_COUNT, ETA};
use crate::fields::Velocity;
use crate::media::{build_from_zeta, ZetaBlocks};
use crate::sem::{abraham_drive, drive_to_tensor, DriveForms, SemTensor};

/// Default central-difference step for parameter derivatives.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// A coframe perturbation direction: ė^a for the family e^a_t = e^a + t ė^a.
#[derive(Debug, Clone)]
pub struct CoframeVariation {
    edot: [PForm; 4],
}

impl CoframeVariation {
    pub fn new(edot: [PForm; 4]) -> Self {
        for form in &edot {
            assert_eq!(form.degree(), 1, "coframe perturbations are 1-forms");
        }
        CoframeVariation { edot }
    }

    pub fn zero() -> Self {
        CoframeVariation {
            edot: [PForm::zero(1); 4],
        }
    }

    pub fn edot(&self, a: usize) -> &PForm {
        &self.edot[a]
    }

    pub fn scale(&self, s: f64) -> CoframeVariation {
        CoframeVariation {
            edot: [
                self.edot[0].scale(s),
                self.edot[1].scale(s),
                self.edot[2].scale(s),
                self.edot[3].scale(s),
            ],
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.edot.iter().map(|f| f.max_abs()).fold(0.0, f64::max)
    }

    /// ġ_ab = i_b ė_a + i_a ė_b with the index of ė lowered by η.
    pub fn gdot(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        for a in 0..4 {
            for b in 0..4 {
                m[(a, b)] =
                    ETA[a] * self.edot[a].components()[b] + ETA[b] * self.edot[b].components()[a];
            }
        }
        m
    }
}

/// The perturbed coframe at a fixed parameter value, with the induced
/// metric, its inverse, the frame vectors and the lifted Hodge dual.
#[derive(Debug, Clone)]
pub struct LiftedState {
    t: f64,
    /// e^a_t as 1-forms in the fixed basis.
    coframe: [PForm; 4],
    /// Inverse of the coefficient matrix M with e^a_t = M^a_b e^b; its
    /// columns are the perturbed frame vectors.
    m_inv: Matrix4<f64>,
    /// (g_t)_ab in the fixed basis.
    g: Matrix4<f64>,
    g_inv: Matrix4<f64>,
}

impl LiftedState {
    /// Evaluate the family at parameter `t`, rejecting values where the
    /// metric leaves the Lorentzian cone (checked by the inertia of g_t and
    /// the orientation of the perturbed coframe).
    pub fn at(var: &CoframeVariation, t: f64) -> Result<LiftedState> {
        let mut coframe = [PForm::zero(1); 4];
        let mut m = Matrix4::zeros();
        for a in 0..4 {
            coframe[a] = Frame::basis_one_form(a) + var.edot(a).scale(t);
            for b in 0..4 {
                m[(a, b)] = coframe[a].components()[b];
            }
        }
        let det = m.determinant();
        let mut g = Matrix4::zeros();
        for a in 0..4 {
            for b in 0..4 {
                g[(a, b)] = (0..4).map(|c| ETA[c] * m[(c, a)] * m[(c, b)]).sum();
            }
        }
        let eigen = nalgebra::SymmetricEigen::new(g);
        let negatives = eigen.eigenvalues.iter().filter(|&&v| v < 0.0).count();
        if det <= 0.0 || negatives != 1 {
            return Err(CoreError::DegenerateMetric { t });
        }
        let m_inv = m.try_inverse().ok_or(CoreError::DegenerateMetric { t })?;
        let g_inv = g.try_inverse().ok_or(CoreError::DegenerateMetric { t })?;
        Ok(LiftedState {
            t,
            coframe,
            m_inv,
            g,
            g_inv,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn metric(&self) -> &Matrix4<f64> {
        &self.g
    }

    /// Frame vector Y_a dual to the perturbed coframe.
    fn frame_vector(&self, a: usize) -> Vector4 {
        Vector4([
            self.m_inv[(0, a)],
            self.m_inv[(1, a)],
            self.m_inv[(2, a)],
            self.m_inv[(3, a)],
        ])
    }

    /// Hodge dual with respect to g_t, computed in the fixed basis by
    /// passing through the perturbed orthonormal coframe.
    pub fn hodge_t(&self, alpha: &PForm) -> PForm {
        let p = alpha.degree();
        // components on the perturbed coframe basis
        let lists: &[&[usize]] = match p {
            0 => &[&[]],
            1 => &[&[0], &[1], &[2], &[3]],
            2 => &[&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]],
            3 => &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
            _ => &[&[0, 1, 2, 3]],
        };
        let mut comps = vec![0.0; COMP_COUNT[p]];
        for (pos, idx) in lists.iter().enumerate() {
            let mut value = *alpha;
            for &a in idx.iter() {
                value = value.interior(&self.frame_vector(a));
            }
            comps[pos] = value.components()[0];
        }
        let star = PForm::from_components(p, &comps).hodge();
        // expand back: β = Σ β'_K f^K with f^K wedges of the perturbed coframe
        let lists_out: &[&[usize]] = match 4 - p {
            0 => &[&[]],
            1 => &[&[0], &[1], &[2], &[3]],
            2 => &[&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]],
            3 => &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
            _ => &[&[0, 1, 2, 3]],
        };
        let mut out = PForm::zero(4 - p);
        for (pos, idx) in lists_out.iter().enumerate() {
            let c = star.components()[pos];
            if c == 0.0 {
                continue;
            }
            let mut basis = PForm::scalar(1.0);
            for &a in idx.iter() {
                basis = basis.wedge(&self.coframe[a]);
            }
            out = out + basis.scale(c);
        }
        out
    }

    /// Lift of a velocity: V_t = V / √(−g_t(V,V)) with its g_t-dual.
    pub fn lift_velocity(&self, v0: &Velocity) -> Result<(Vector4, PForm)> {
        let v = v0.vector();
        let mut norm_sq = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                norm_sq += self.g[(a, b)] * v.0[a] * v.0[b];
            }
        }
        if norm_sq >= 0.0 {
            return Err(CoreError::DegenerateMetric { t: self.t });
        }
        let scale = 1.0 / (-norm_sq).sqrt();
        let vt = *v * scale;
        let mut dual = [0.0; 4];
        for a in 0..4 {
            dual[a] = (0..4).map(|b| self.g[(a, b)] * vt.0[b]).sum();
        }
        Ok((vt, PForm::from_components(1, &dual)))
    }

    /// Lifted spatial projector π_t = Id + Ṽ_t ⊗ V_t applied to a 1-form.
    pub fn project_t(&self, alpha: &PForm, vt: &Vector4, vt_dual: &PForm) -> PForm {
        let pairing: f64 = (0..4).map(|a| alpha.components()[a] * vt.0[a]).sum();
        *alpha + vt_dual.scale(pairing)
    }

    /// Raise a 1-form with g_t⁻¹.
    pub fn raise(&self, alpha: &PForm) -> Vector4 {
        let mut out = [0.0; 4];
        for a in 0..4 {
            out[a] = (0..4).map(|b| self.g_inv[(a, b)] * alpha.components()[b]).sum();
        }
        Vector4(out)
    }

    /// Lower a vector with g_t.
    pub fn lower(&self, x: &Vector4) -> PForm {
        let mut out = [0.0; 4];
        for a in 0..4 {
            out[a] = (0..4).map(|b| self.g[(a, b)] * x.0[b]).sum();
        }
        PForm::from_components(1, &out)
    }
}

/// Analytic derivative of the Hodge dual along a coframe variation:
/// ⋆̇α = ė^a ∧ i_a ⋆α − ⋆(ė^a ∧ i_a α).
///
/// For scalars the second piece is absent (i_a 1 = 0), for volume forms
/// the first.
pub fn hodge_dot(var: &CoframeVariation, alpha: &PForm) -> PForm {
    let p = alpha.degree();
    let star = alpha.hodge();
    let mut out = PForm::zero(4 - p);
    if star.degree() >= 1 {
        for a in 0..4 {
            out = out + var.edot(a).wedge(&star.interior(&Frame::basis_vector(a)));
        }
    }
    if p >= 1 {
        let mut inner = PForm::zero(p);
        for a in 0..4 {
            inner = inner + var.edot(a).wedge(&alpha.interior(&Frame::basis_vector(a)));
        }
        out = out - inner.hodge();
    }
    out
}

/// Lifted spatial blocks at parameter t, sharing the shape of
/// [`ZetaBlocks`] but relative to (g_t, V_t).
#[derive(Debug, Clone)]
pub struct LiftedZetaBlocks {
    pub zde: Matrix4<f64>,
    pub zdb: Matrix4<f64>,
    pub zhe: Matrix4<f64>,
    pub zhb: Matrix4<f64>,
    pub v_t: Vector4,
    pub v_t_dual: PForm,
}

/// Lift the spatial blocks to parameter t:
/// i_X ζ_t(α) = ½( i_X ζ_0(π_t α) ± i_{g_t⁻¹α} ζ'_0(π_t g_t X) ),
/// pairing (de, de), (hb, hb), (db, −he), (he, −db). The lift keeps the
/// blocks spatial with respect to V_t and keeps the adjoint relations with
/// respect to g_t, and restricts to ζ_0 at t = 0.
pub fn zeta_lift(z0: &ZetaBlocks, state: &LiftedState) -> Result<LiftedZetaBlocks> {
    let (vt, vt_dual) = state.lift_velocity(&z0.velocity)?;
    let apply = |m: &Matrix4<f64>, alpha: &PForm| -> PForm {
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| m[(i, j)] * alpha.components()[j]).sum();
        }
        PForm::from_components(1, &out)
    };
    let lift_pair = |primary: &Matrix4<f64>, partner: &Matrix4<f64>, sign: f64| -> Matrix4<f64> {
        let mut out = Matrix4::zeros();
        for j in 0..4 {
            let alpha = Frame::basis_one_form(j);
            let proj_alpha = state.project_t(&alpha, &vt, &vt_dual);
            let first = apply(primary, &proj_alpha);
            let raised_alpha = state.raise(&alpha);
            for i in 0..4 {
                let xi = Frame::basis_vector(i);
                let lowered = state.lower(&xi);
                let proj_x = state.project_t(&lowered, &vt, &vt_dual);
                let second = apply(partner, &proj_x);
                let second_contracted: f64 =
                    (0..4).map(|a| raised_alpha.0[a] * second.components()[a]).sum();
                out[(i, j)] = 0.5 * (first.components()[i] + sign * second_contracted);
            }
        }
        out
    };
    Ok(LiftedZetaBlocks {
        zde: lift_pair(&z0.zde, &z0.zde, 1.0),
        zhb: lift_pair(&z0.zhb, &z0.zhb, 1.0),
        zdb: lift_pair(&z0.zdb, &z0.zhe, -1.0),
        zhe: lift_pair(&z0.zhe, &z0.zdb, -1.0),
        v_t: vt,
        v_t_dual: vt_dual,
    })
}

fn apply_block(m: &Matrix4<f64>, alpha: &PForm) -> PForm {
    let mut out = [0.0; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..4).map(|j| m[(i, j)] * alpha.components()[j]).sum();
    }
    PForm::from_components(1, &out)
}

/// Blocks in (de, db, he, hb) order together with the lifted velocity.
type BlockSet<'a> = ([&'a Matrix4<f64>; 4], &'a Vector4, &'a PForm);

fn action_from_blocks(state: &LiftedState, blocks: BlockSet<'_>, f: &PForm) -> PForm {
    let ([zde, zdb, zhe, zhb], vt, vt_dual) = blocks;
    let star_f = state.hodge_t(f);
    let e_t = f.interior(vt);
    let b_t = star_f.interior(vt);
    let term1 = f.wedge(&state.hodge_t(&apply_block(zde, &e_t).wedge(vt_dual)));
    let term2 = f.wedge(&state.hodge_t(&apply_block(zdb, &b_t).wedge(vt_dual)));
    let term3 = f.wedge(&apply_block(zhe, &e_t).wedge(vt_dual));
    let term4 = f.wedge(&apply_block(zhb, &b_t).wedge(vt_dual));
    (term1 + term2 + term3 + term4).scale(-0.5)
}

/// The action density 4-form Λ_t, evaluated with the parameter-independent
/// blocks ζ_0 and the lifted ⋆_t, V_t, Ṽ_t:
/// −2Λ_t = F∧⋆_t(ζ^de_0(i_{V_t}F)∧Ṽ_t) + F∧⋆_t(ζ^db_0(i_{V_t}⋆_tF)∧Ṽ_t)
///        + F∧ζ^he_0(i_{V_t}F)∧Ṽ_t + F∧ζ^hb_0(i_{V_t}⋆_tF)∧Ṽ_t.
/// At t = 0 this equals −½ F∧⋆G with G = Z(F); the sign normalizes the
/// energy density carried by the associated tensors to be positive.
pub fn action_density(state: &LiftedState, z0: &ZetaBlocks, f: &PForm) -> Result<PForm> {
    let (vt, vt_dual) = state.lift_velocity(&z0.velocity)?;
    Ok(action_from_blocks(
        state,
        ([&z0.zde, &z0.zdb, &z0.zhe, &z0.zhb], &vt, &vt_dual),
        f,
    ))
}

/// The same action density evaluated with the lifted blocks ζ_t instead of
/// ζ_0; equal to [`action_density`] for all admissible t.
pub fn action_density_with_lifted_zeta(
    state: &LiftedState,
    z0: &ZetaBlocks,
    f: &PForm,
) -> Result<PForm> {
    let lifted = zeta_lift(z0, state)?;
    Ok(action_from_blocks(
        state,
        (
            [&lifted.zde, &lifted.zdb, &lifted.zhe, &lifted.zhb],
            &lifted.v_t,
            &lifted.v_t_dual,
        ),
        f,
    ))
}

/// Outcome of the variational identity check.
#[derive(Debug, Clone)]
pub struct VariationCheck {
    /// Central finite difference of the action density at t = 0.
    pub lhs: f64,
    /// ė^a ∧ τ_a with the drive forms.
    pub rhs: f64,
    pub residual: f64,
}

/// Fourth-order central difference of the action density in the family
/// parameter at t = 0, sampled at ±h and ±2h.
fn action_derivative(z0: &ZetaBlocks, f: &PForm, var: &CoframeVariation, h: f64) -> Result<f64> {
    let sample = |t: f64| -> Result<f64> {
        Ok(action_density(&LiftedState::at(var, t)?, z0, f)?.components()[0])
    };
    Ok((-sample(2.0 * h)? + 8.0 * sample(h)? - 8.0 * sample(-h)? + sample(-2.0 * h)?)
        / (12.0 * h))
}

/// Check Λ̇ = ė^a ∧ τ_a by central finite differences of the lifted action
/// against the drive forms of [`abraham_drive`]. Inputs are normalized to
/// unit scale before differencing and the result rescaled.
pub fn verify_variation(
    z0: &ZetaBlocks,
    f: &PForm,
    var: &CoframeVariation,
    fd_step: f64,
) -> Result<VariationCheck> {
    let f_scale = if f.max_abs() == 0.0 { 1.0 } else { f.max_abs() };
    let e_scale = var.max_abs();
    if e_scale == 0.0 {
        return Ok(VariationCheck {
            lhs: 0.0,
            rhs: 0.0,
            residual: 0.0,
        });
    }
    let f_hat = f.scale(1.0 / f_scale);
    let var_hat = var.scale(1.0 / e_scale);
    let rescale = f_scale * f_scale * e_scale;

    let lhs = action_derivative(z0, &f_hat, &var_hat, fd_step)? * rescale;

    let z = build_from_zeta(z0)?;
    let tau = abraham_drive(&f_hat, &z, &z0.velocity)?;
    let mut rhs = 0.0;
    for a in 0..4 {
        rhs += var_hat.edot(a).wedge(&tau.tau[a]).components()[0];
    }
    rhs *= rescale;

    Ok(VariationCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

/// Assemble the stress-energy-momentum tensor by probing the action
/// derivative with the 16 basis coframe variations ė^a = e^b. Equals
/// [`drive_to_tensor`] of [`abraham_drive`] up to finite-difference error.
pub fn tensor_from_metric_variation(
    z0: &ZetaBlocks,
    f: &PForm,
    fd_step: f64,
) -> Result<SemTensor> {
    let mut tau = [PForm::zero(3); 4];
    for a in 0..4 {
        let mut comps = [0.0; 4]; // 3-form components, lexicographic
        for b in 0..4 {
            let mut edot = [PForm::zero(1); 4];
            edot[a] = Frame::basis_one_form(b);
            let var = CoframeVariation::new(edot);
            let lambda_dot = action_derivative(z0, f, &var, fd_step)?;
            // e^b ∧ τ_a picks out the complement component with sign (−1)^b
            let sign = if b % 2 == 0 { 1.0 } else { -1.0 };
            // complement of {b} in lexicographic 3-form order
            let pos = match b {
                0 => 3, // (1,2,3)
                1 => 2, // (0,2,3)
                2 => 1, // (0,1,3)
                _ => 0, // (0,1,2)
            };
            comps[pos] = lambda_dot * sign;
        }
        tau[a] = PForm::from_components(3, &comps);
    }
    Ok(drive_to_tensor(&DriveForms { tau }))
}
