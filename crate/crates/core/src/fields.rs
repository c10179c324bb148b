//! Electromagnetic 2-forms and their observer decompositions, the Poynting
//! 1-form, the polarization/magnetization split, and finite-difference
//! exterior derivatives for fields sampled on Minkowski coordinates.
//!
//! Natural units throughout: c = ε0 = μ0 = 1, and the magnetic slots store
//! the rescaled quantities so that all four field 1-forms share units.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::exterior::{Frame, PForm, Vector4};
use crate::media::ConstitutiveZ;

/// Tolerance for unit-norm and spatiality validation on unit-scale inputs.
pub const VALIDATION_TOL: f64 = 1e-12;

/// A unit future-pointing timelike 4-velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocity(Vector4);

impl Velocity {
    /// The frame rest velocity X_0.
    pub fn rest() -> Self {
        Velocity(Frame::basis_vector(0))
    }

    /// V = (cosh‖w‖, sinh‖w‖ ŵ); unit and future-pointing by construction.
    pub fn from_rapidity(w: &[f64; 3]) -> Self {
        let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        if n == 0.0 {
            return Self::rest();
        }
        let sh = n.sinh();
        Velocity(Vector4([
            n.cosh(),
            sh * w[0] / n,
            sh * w[1] / n,
            sh * w[2] / n,
        ]))
    }

    /// Validate an explicit 4-vector as a velocity.
    pub fn try_new(v: Vector4) -> Result<Self> {
        let norm_sq = Frame::metric(&v, &v);
        if (norm_sq + 1.0).abs() > VALIDATION_TOL || v.0[0] <= 0.0 {
            return Err(CoreError::NonUnitVelocity {
                norm_sq,
                time_component: v.0[0],
            });
        }
        Ok(Velocity(v))
    }

    pub fn vector(&self) -> &Vector4 {
        &self.0
    }

    /// Metric dual 1-form Ṽ.
    pub fn dual(&self) -> PForm {
        self.0.metric_dual()
    }

    /// Rapidity 3-vector w with V = (cosh‖w‖, sinh‖w‖ ŵ).
    pub fn rapidity(&self) -> [f64; 3] {
        let s = [self.0 .0[1], self.0 .0[2], self.0 .0[3]];
        let sn = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        if sn == 0.0 {
            return [0.0; 3];
        }
        let n = sn.asinh();
        [n * s[0] / sn, n * s[1] / sn, n * s[2] / sn]
    }
}

/// Electric and magnetic-induction 1-forms of a field 2-form relative to an
/// observer; the same shape carries (d, h) for an excitation 2-form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldDecomp {
    pub e: PForm,
    pub b: PForm,
}

impl FieldDecomp {
    /// Largest violation of i_V e = 0, i_V b = 0.
    pub fn spatiality_violation(&self, v: &Velocity) -> f64 {
        let ie = self.e.interior(v.vector()).max_abs();
        let ib = self.b.interior(v.vector()).max_abs();
        ie.max(ib)
    }
}

/// e = i_U F and b = i_U ⋆F; both spatial with respect to U.
pub fn decompose_f(f: &PForm, u: &Velocity) -> FieldDecomp {
    assert_eq!(f.degree(), 2, "field decomposition requires a 2-form");
    FieldDecomp {
        e: f.interior(u.vector()),
        b: f.hodge().interior(u.vector()),
    }
}

/// F = e∧Ũ − ⋆(b∧Ũ). Inverse of [`decompose_f`] for spatial decompositions.
pub fn reconstruct_f(dec: &FieldDecomp, u: &Velocity) -> Result<PForm> {
    let scale = dec.e.max_abs().max(dec.b.max_abs()).max(1.0);
    let violation = dec.spatiality_violation(u);
    if violation > VALIDATION_TOL * scale {
        return Err(CoreError::NonSpatial {
            what: "field decomposition",
            violation,
        });
    }
    let u_dual = u.dual();
    Ok(dec.e.wedge(&u_dual) - dec.b.wedge(&u_dual).hodge())
}

/// d = i_U G and h = i_U ⋆G for the excitation 2-form.
pub fn decompose_g(g: &PForm, u: &Velocity) -> FieldDecomp {
    decompose_f(g, u)
}

/// G = d∧Ũ − ⋆(h∧Ũ).
pub fn reconstruct_g(dec: &FieldDecomp, u: &Velocity) -> Result<PForm> {
    reconstruct_f(dec, u)
}

/// The Poynting 1-form s = ⋆(i_V F ∧ i_V⋆G ∧ Ṽ + i_V⋆F ∧ i_V G ∧ Ṽ).
///
/// s is spatial with respect to V and vanishes whenever G = F, so it
/// measures the medium-induced part of the energy flux. The plain
/// field-energy flux is [`poynting_eh`].
pub fn poynting(f: &PForm, g: &PForm, v: &Velocity) -> PForm {
    let vd = v.dual();
    let e = f.interior(v.vector());
    let b = f.hodge().interior(v.vector());
    let d = g.interior(v.vector());
    let h = g.hodge().interior(v.vector());
    (e.wedge(&h).wedge(&vd) + b.wedge(&d).wedge(&vd)).hodge()
}

/// The comoving energy-flux 1-form ⋆(Ṽ∧e∧h); its spatial components are
/// the classical E×H.
pub fn poynting_eh(e: &PForm, h: &PForm, v: &Velocity) -> PForm {
    v.dual().wedge(e).wedge(h).hodge()
}

/// Comoving polarization and magnetization split of an excitation.
#[derive(Debug, Clone, Copy)]
pub struct PolarizationSplit {
    /// p = d − e.
    pub p: PForm,
    /// m = b − h.
    pub m: PForm,
    /// 𝒫 = p∧Ṽ + ⋆(m∧Ṽ); satisfies G = F + 𝒫.
    pub polarization_2form: PForm,
}

pub fn polarization_split(f: &PForm, g: &PForm, v: &Velocity) -> PolarizationSplit {
    let fd = decompose_f(f, v);
    let gd = decompose_g(g, v);
    let p = gd.e - fd.e;
    let m = fd.b - gd.b;
    let vd = v.dual();
    let pol = p.wedge(&vd) + m.wedge(&vd).hodge();
    PolarizationSplit {
        p,
        m,
        polarization_2form: pol,
    }
}

type Sampler = Arc<dyn Fn(&[f64; 4]) -> PForm + Send + Sync>;

/// A p-form field over Minkowski coordinates, sampled pointwise, with a
/// stencil step for central finite differences. Samplers must be reentrant;
/// evaluation at distinct points may run concurrently.
#[derive(Clone)]
pub struct SpacetimeField {
    degree: usize,
    stencil_h: f64,
    sampler: Sampler,
}

impl SpacetimeField {
    pub const DEFAULT_STENCIL: f64 = 1e-3;

    pub fn new<S>(degree: usize, stencil_h: f64, sampler: S) -> Self
    where
        S: Fn(&[f64; 4]) -> PForm + Send + Sync + 'static,
    {
        assert!(stencil_h > 0.0, "stencil step must be positive");
        SpacetimeField {
            degree,
            stencil_h,
            sampler: Arc::new(sampler),
        }
    }

    /// Constant field.
    pub fn uniform(value: PForm) -> Self {
        let degree = value.degree();
        SpacetimeField::new(degree, Self::DEFAULT_STENCIL, move |_| value)
    }

    /// Source-free plane wave: amplitude A, unit propagation direction k̂,
    /// transverse polarization Ê, with
    /// e = A cos(x⁰ − k̂·x̄) Ê·dx̄ and b = −A cos(x⁰ − k̂·x̄) (k̂×Ê)·dx̄.
    pub fn plane_wave(amplitude: f64, direction: [f64; 3], polarization: [f64; 3]) -> Result<Self> {
        let dn = (direction[0] * direction[0]
            + direction[1] * direction[1]
            + direction[2] * direction[2])
            .sqrt();
        if dn == 0.0 {
            return Err(CoreError::InvalidArgument(
                "plane wave direction must be nonzero".into(),
            ));
        }
        let k = [direction[0] / dn, direction[1] / dn, direction[2] / dn];
        let dot = k[0] * polarization[0] + k[1] * polarization[1] + k[2] * polarization[2];
        let pn = (polarization[0] * polarization[0]
            + polarization[1] * polarization[1]
            + polarization[2] * polarization[2])
            .sqrt();
        if pn == 0.0 || dot.abs() > 1e-9 * pn {
            return Err(CoreError::InvalidArgument(
                "plane wave polarization must be nonzero and transverse to the direction".into(),
            ));
        }
        let pol = polarization;
        let cross = [
            k[1] * pol[2] - k[2] * pol[1],
            k[2] * pol[0] - k[0] * pol[2],
            k[0] * pol[1] - k[1] * pol[0],
        ];
        let rest = Velocity::rest();
        Ok(SpacetimeField::new(2, Self::DEFAULT_STENCIL, move |x| {
            let phase = x[0] - (k[0] * x[1] + k[1] * x[2] + k[2] * x[3]);
            let c = amplitude * phase.cos();
            let e = PForm::from_components(1, &[0.0, c * pol[0], c * pol[1], c * pol[2]]);
            let b = PForm::from_components(1, &[0.0, -c * cross[0], -c * cross[1], -c * cross[2]]);
            reconstruct_f(&FieldDecomp { e, b }, &rest).expect("spatial by construction")
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn stencil_h(&self) -> f64 {
        self.stencil_h
    }

    pub fn with_stencil(mut self, h: f64) -> Self {
        assert!(h > 0.0, "stencil step must be positive");
        self.stencil_h = h;
        self
    }

    pub fn sample(&self, x: &[f64; 4]) -> PForm {
        let f = (self.sampler)(x);
        debug_assert_eq!(f.degree(), self.degree);
        f
    }

    /// Map the sampled values pointwise, preserving the stencil step.
    pub fn map<M>(&self, degree: usize, m: M) -> SpacetimeField
    where
        M: Fn(PForm) -> PForm + Send + Sync + 'static,
    {
        let inner = Arc::clone(&self.sampler);
        SpacetimeField {
            degree,
            stencil_h: self.stencil_h,
            sampler: Arc::new(move |x| m(inner(x))),
        }
    }

    fn partial(&self, x: &[f64; 4], mu: usize) -> Result<PForm> {
        let h = self.stencil_h;
        let mut xp = *x;
        let mut xm = *x;
        xp[mu] += h;
        xm[mu] -= h;
        let plus = self.sample(&xp);
        let minus = self.sample(&xm);
        let diff = (plus - minus).scale(0.5 / h);
        if diff.components().iter().any(|c| !c.is_finite()) {
            return Err(CoreError::InvalidArgument(format!(
                "non-finite sample near {x:?}"
            )));
        }
        Ok(diff)
    }
}

/// Central-difference exterior derivative: d f = Σ_μ e^μ ∧ ∂_μ f.
///
/// Exact to rounding on samplers polynomial of degree ≤ 2 per coordinate.
pub fn exterior_derivative(f: &SpacetimeField, x: &[f64; 4]) -> Result<PForm> {
    if f.degree() == 4 {
        return Ok(PForm::zero(4).wedge(&Frame::basis_one_form(0))); // degenerate zero
    }
    let mut out = PForm::zero(f.degree() + 1);
    for mu in 0..4 {
        let d_mu = f.partial(x, mu)?;
        out = out + Frame::basis_one_form(mu).wedge(&d_mu);
    }
    Ok(out)
}

/// Residuals of the two field equations at a point.
#[derive(Debug, Clone)]
pub struct MaxwellResiduals {
    /// dF at x; identically zero for exact solutions.
    pub closure: PForm,
    /// Max-abs components of d⋆Z(F) − j at x.
    pub excitation_residual: f64,
}

/// Evaluate ‖dF‖ and ‖d⋆Z(F) − j‖ by central differences at x. A broken
/// field reports a large residual rather than an error.
pub fn maxwell_residuals(
    f: &SpacetimeField,
    z: &ConstitutiveZ,
    j: Option<&SpacetimeField>,
    x: &[f64; 4],
) -> Result<MaxwellResiduals> {
    let closure = exterior_derivative(f, x)?;
    let z = z.clone();
    let excitation = f.map(2, move |value| z.apply(&value).hodge());
    let mut residual = exterior_derivative(&excitation, x)?;
    if let Some(src) = j {
        residual = residual - src.sample(x);
    }
    Ok(MaxwellResiduals {
        closure,
        excitation_residual: residual.max_abs(),
    })
}
