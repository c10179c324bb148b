//! Drive 3-forms and stress-energy-momentum tensors: vacuum drive forms,
//! Killing decompositions, the velocity-dependent symmetric tensor with its
//! drive forms, the velocity-free symmetrized alternative, conservation
//! residuals and the dust-fluid total tensor.
//!
//! Two normalizations coexist and both are exposed. The drive forms
//! ([`vacuum_drive`], [`abraham_drive`]) are normalized against the action
//! functional: contracting a coframe perturbation with them reproduces the
//! derivative of the action density exactly (see the `variation` module).
//! The component tensors ([`abraham_tensor`], [`minkowski_sym_tensor`])
//! follow the classical sign dictionary in which the energy density is
//! ½(E·D + H·B) and the momentum row is −(E×H)_k. With the frame
//! convention e = i_U F used here the two dictionaries differ by a time
//! reflection in the mixed components; [`variational_tensor`] exposes the
//! drive-form-normalized tensor for callers that need strict consistency
//! with the variational machinery.

use nalgebra::Matrix4;

use crate::error::{CoreError, Result};
use crate::exterior::{Frame, PForm, Vector4, ETA};
use crate::fields::{decompose_f, exterior_derivative, poynting, SpacetimeField, Velocity};
use crate::media::{require_self_adjoint, ConstitutiveZ};

/// A rank-2 spacetime tensor T_ab in the orthonormal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SemTensor {
    m: Matrix4<f64>,
}

impl SemTensor {
    pub fn zero() -> Self {
        SemTensor {
            m: Matrix4::zeros(),
        }
    }

    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        SemTensor { m }
    }

    pub fn component(&self, a: usize, b: usize) -> f64 {
        self.m[(a, b)]
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn to_rows(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (a, row) in out.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = self.m[(a, b)];
            }
        }
        out
    }

    pub fn add(&self, other: &SemTensor) -> SemTensor {
        SemTensor { m: self.m + other.m }
    }

    pub fn scale(&self, s: f64) -> SemTensor {
        SemTensor { m: self.m * s }
    }

    pub fn max_abs(&self) -> f64 {
        self.m.abs().max()
    }

    pub fn max_abs_diff(&self, other: &SemTensor) -> f64 {
        (self.m - other.m).abs().max()
    }

    /// Largest |T_ab − T_ba|.
    pub fn asymmetry(&self) -> f64 {
        (self.m - self.m.transpose()).abs().max()
    }
}

/// Drive 3-forms τ_0..τ_3, one per frame axis.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveForms {
    pub tau: [PForm; 4],
}

impl DriveForms {
    pub fn zero() -> Self {
        DriveForms {
            tau: [PForm::zero(3); 4],
        }
    }

    pub fn add(&self, other: &DriveForms) -> DriveForms {
        DriveForms {
            tau: [
                self.tau[0] + other.tau[0],
                self.tau[1] + other.tau[1],
                self.tau[2] + other.tau[2],
                self.tau[3] + other.tau[3],
            ],
        }
    }

    pub fn max_abs_diff(&self, other: &DriveForms) -> f64 {
        (0..4)
            .map(|a| (self.tau[a] - other.tau[a]).max_abs())
            .fold(0.0, f64::max)
    }
}

/// Vacuum drive 3-form τ_Y = ½(i_Y F ∧ ⋆F − i_Y ⋆F ∧ F) for any vector Y.
pub fn vacuum_drive(f: &PForm, y: &Vector4) -> PForm {
    let star = f.hodge();
    (f.interior(y).wedge(&star) - star.interior(y).wedge(f)).scale(0.5)
}

/// Vacuum drive forms along the four frame axes.
pub fn vacuum_drive_forms(f: &PForm) -> DriveForms {
    DriveForms {
        tau: [
            vacuum_drive(f, &Frame::basis_vector(0)),
            vacuum_drive(f, &Frame::basis_vector(1)),
            vacuum_drive(f, &Frame::basis_vector(2)),
            vacuum_drive(f, &Frame::basis_vector(3)),
        ],
    }
}

/// Pieces of the drive form along a unit timelike Killing direction:
/// τ_K = e∧h∧K̃ − ½(g(ẽ,ẽ) + g(h̃,h̃)) ⋆K̃ with e, h = b taken relative
/// to U = K in natural units.
#[derive(Debug, Clone)]
pub struct KillingDecomposition {
    /// The flux piece e∧h∧K̃.
    pub poynting_part: PForm,
    /// ½(g(ẽ,ẽ) + g(h̃,h̃)), the field energy density seen by K.
    pub energy_density: f64,
    /// ⋆K̃, the spatial volume form of the K-observer.
    pub volume_dual: PForm,
}

impl KillingDecomposition {
    /// Reassemble τ_K; equals [`vacuum_drive`] of the same field and axis.
    pub fn total(&self) -> PForm {
        self.poynting_part - self.volume_dual.scale(self.energy_density)
    }
}

pub fn killing_decompose(f: &PForm, k: &Velocity) -> KillingDecomposition {
    let dec = decompose_f(f, k);
    let h = dec.b; // vacuum: h = b in natural units
    let kd = k.dual();
    KillingDecomposition {
        poynting_part: dec.e.wedge(&h).wedge(&kd),
        energy_density: 0.5 * (dec.e.inner(&dec.e) + h.inner(&h)),
        volume_dual: kd.hodge(),
    }
}

/// T_ab = i_{X_b} ⋆τ_a.
pub fn drive_to_tensor(tau: &DriveForms) -> SemTensor {
    let mut m = Matrix4::zeros();
    for a in 0..4 {
        let row = tau.tau[a].hodge();
        for b in 0..4 {
            m[(a, b)] = row.components()[b];
        }
    }
    SemTensor { m }
}

/// τ_a = ⋆(T(X_a, −)); inverse of [`drive_to_tensor`].
pub fn tensor_to_drive(t: &SemTensor) -> DriveForms {
    let mut tau = [PForm::zero(3); 4];
    for (a, out) in tau.iter_mut().enumerate() {
        let mut row = [0.0; 4];
        for (b, v) in row.iter_mut().enumerate() {
            *v = t.m[(a, b)];
        }
        *out = PForm::from_components(1, &row).hodge();
    }
    DriveForms { tau }
}

/// Largest violation of the wedge form of the symmetry condition,
/// e_c ∧ τ_b = e_b ∧ τ_c; zero exactly when the associated tensor is
/// symmetric.
pub fn symmetry_condition_violation(tau: &DriveForms) -> f64 {
    let mut worst = 0.0f64;
    for b in 0..4 {
        for c in 0..4 {
            let eb = Frame::basis_one_form(b).scale(ETA[b]);
            let ec = Frame::basis_one_form(c).scale(ETA[c]);
            let diff = ec.wedge(&tau.tau[b]) - eb.wedge(&tau.tau[c]);
            worst = worst.max(diff.max_abs());
        }
    }
    worst
}

/// Drive forms of the medium action, normalized so that contracting with a
/// coframe perturbation reproduces the action derivative:
/// τ_a = ½(i_a G ∧ ⋆F − F ∧ i_a ⋆G) − V_a ⋆s + ½ e_a ∧ i_V ⋆s,
/// with G = Z(F) and s the medium Poynting 1-form. For the vacuum relation
/// G = F this reduces axis-by-axis to [`vacuum_drive`].
pub fn abraham_drive(f: &PForm, z: &ConstitutiveZ, v: &Velocity) -> Result<DriveForms> {
    require_self_adjoint(z, "constitutive tensor for drive forms")?;
    let g = z.apply(f);
    let star_f = f.hodge();
    let star_g = g.hodge();
    let s = poynting(f, &g, v);
    let star_s = s.hodge();
    let iv_star_s = star_s.interior(v.vector());
    let vd = v.dual();
    let mut tau = [PForm::zero(3); 4];
    for (a, out) in tau.iter_mut().enumerate() {
        let xa = Frame::basis_vector(a);
        let field_part =
            (g.interior(&xa).wedge(&star_f) - f.wedge(&star_g.interior(&xa))).scale(0.5);
        let v_a = vd.components()[a]; // V_a = η_ab V^b
        let e_a = Frame::basis_one_form(a).scale(ETA[a]);
        *out = field_part - star_s.scale(v_a) + e_a.wedge(&iv_star_s).scale(0.5);
    }
    Ok(DriveForms { tau })
}

/// The drive-form-normalized tensor, i_b ⋆ of [`abraham_drive`]. Symmetric;
/// differs from [`abraham_tensor`] by a time reflection of the mixed
/// components.
pub fn variational_tensor(f: &PForm, z: &ConstitutiveZ, v: &Velocity) -> Result<SemTensor> {
    Ok(drive_to_tensor(&abraham_drive(f, z, v)?))
}

/// Negate the time-mixing components of a 2-form (pullback along the
/// time reflection of the frame).
fn time_reflect(f: &PForm) -> PForm {
    assert_eq!(f.degree(), 2);
    let c = f.components();
    // lexicographic order (01, 02, 03, 12, 13, 23)
    PForm::from_components(2, &[-c[0], -c[1], -c[2], c[3], c[4], c[5]])
}

fn outer(a: &PForm, b: &PForm) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = a.components()[i] * b.components()[j];
        }
    }
    m
}

fn eta_matrix() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(ETA[0], ETA[1], ETA[2], ETA[3]))
}

/// The velocity-independent symmetrized tensor
/// T = ½(i_a F'⊗i^a G' + i_a G'⊗i^a F') − ½⟨F,G⟩ g, where the primes mark
/// the classical component dictionary (time reflection of the frame
/// convention e = i_U F). Comoving components: T_00 = ½(E·D + H·B),
/// T_0k = −½(E×H + D×B)_k.
pub fn minkowski_sym_tensor(f: &PForm, z: &ConstitutiveZ) -> SemTensor {
    let g = z.apply(f);
    let fr = time_reflect(f);
    let gr = time_reflect(&g);
    let mut m = Matrix4::zeros();
    for a in 0..4 {
        let ia_f = fr.interior(&Frame::basis_vector(a));
        let ia_g = gr.interior(&Frame::basis_vector(a));
        // i^a = η^aa i_a in the orthonormal frame
        m += (outer(&ia_f, &ia_g) + outer(&ia_g, &ia_f)) * (0.5 * ETA[a]);
    }
    m -= eta_matrix() * (0.5 * f.inner(&g));
    SemTensor { m }
}

/// The symmetric velocity-dependent tensor in the classical component
/// dictionary: [`minkowski_sym_tensor`] plus the symmetrized Poynting
/// correction,
/// T = T_mink + ½(Ṽ⊗s + s⊗Ṽ).
/// Comoving it equals the field form
/// −½(e⊗d + d⊗e + h⊗b + b⊗h) + ½(⟨e,d⟩ + ⟨h,b⟩)(g + 2Ṽ⊗Ṽ) + Ṽ⊗S̃ + S̃⊗Ṽ
/// with S̃ = ⋆(Ṽ∧e∧h), reproducing T_00 = ½(E·D + H·B),
/// T_0k = −(E×H)_k and the standard stress block.
pub fn abraham_tensor(f: &PForm, z: &ConstitutiveZ, v: &Velocity) -> Result<SemTensor> {
    require_self_adjoint(z, "constitutive tensor for the stress tensor")?;
    let g = z.apply(f);
    let s = poynting(f, &g, v);
    let vd = v.dual();
    let mink = minkowski_sym_tensor(f, z);
    let m = mink.m + (outer(&vd, &s) + outer(&s, &vd)) * 0.5;
    Ok(SemTensor { m })
}

/// The four-way split of the drive forms into field, bulk-polarization,
/// magnetization-coupling and rest terms, built from the comoving
/// polarization p = d − e and magnetization m = b − h. The four sets sum
/// to [`abraham_drive`] exactly: writing W = m∧e − p∧b, the Poynting
/// 1-form satisfies ⋆s = W∧Ṽ, and the three medium terms reassemble
/// −V_a ⋆s + ½ e_a∧i_V ⋆s.
pub struct PolarizationDriveSplit {
    pub field: DriveForms,
    pub bulk: DriveForms,
    pub magnetization: DriveForms,
    pub rest: DriveForms,
}

impl PolarizationDriveSplit {
    pub fn sum(&self) -> DriveForms {
        self.field
            .add(&self.bulk)
            .add(&self.magnetization)
            .add(&self.rest)
    }
}

pub fn polarization_drive_split(
    f: &PForm,
    z: &ConstitutiveZ,
    v: &Velocity,
) -> Result<PolarizationDriveSplit> {
    require_self_adjoint(z, "constitutive tensor for the drive split")?;
    let g = z.apply(f);
    let split = crate::fields::polarization_split(f, &g, v);
    let (p, m) = (split.p, split.m);
    let fd = decompose_f(f, v);
    let (e, b) = (fd.e, fd.b);
    let star_f = f.hodge();
    let star_g = g.hodge();
    let vd = v.dual();
    let x2 = p.wedge(&star_f) + m.wedge(f); // p∧⋆F + m∧F, 3-forms
    let y2 = p.wedge(&b) + m.wedge(&e); // p∧b + m∧e, 2-forms
    let me = m.wedge(&e); // the magnetization coupling 2-form

    let mut field = [PForm::zero(3); 4];
    let mut bulk = [PForm::zero(3); 4];
    let mut magnet = [PForm::zero(3); 4];
    let mut rest = [PForm::zero(3); 4];
    for c in 0..4 {
        let xc = Frame::basis_vector(c);
        let v_c = vd.components()[c];
        let e_c = Frame::basis_one_form(c).scale(ETA[c]);
        field[c] = (g.interior(&xc).wedge(&star_f) - star_g.interior(&xc).wedge(f)).scale(0.5);
        bulk[c] = (x2.scale(v_c) - vd.wedge(&y2).scale(v_c)).scale(-0.5);
        magnet[c] = me.wedge(&vd).scale(-2.0 * v_c) - e_c.wedge(&me);
        rest[c] = (x2.scale(v_c) + vd.wedge(&y2).scale(v_c) + e_c.wedge(&y2)).scale(0.5);
    }
    Ok(PolarizationDriveSplit {
        field: DriveForms { tau: field },
        bulk: DriveForms { tau: bulk },
        magnetization: DriveForms { tau: magnet },
        rest: DriveForms { tau: rest },
    })
}

/// Finite-difference check of the local conservation law dτ_K = −i_K F∧j
/// for a constant-component Killing vector K, with
/// τ_K = ½(i_K F∧⋆G − i_K ⋆G∧F) and G = Z(F).
/// Returns the max-abs component of dτ_K + i_K F∧j at x.
pub fn conservation_residual(
    f: &SpacetimeField,
    z: &ConstitutiveZ,
    k: &Vector4,
    j: Option<&SpacetimeField>,
    x: &[f64; 4],
) -> Result<f64> {
    let zc = z.clone();
    let kc = *k;
    let tau_field = f.map(3, move |value| {
        let g = zc.apply(&value);
        (value.interior(&kc).wedge(&g.hodge()) - g.hodge().interior(&kc).wedge(&value)).scale(0.5)
    });
    let mut residual = exterior_derivative(&tau_field, x)?;
    if let Some(src) = j {
        residual = residual + f.sample(x).interior(k).wedge(&src.sample(x));
    }
    Ok(residual.max_abs())
}

/// Total tensor of the electromagnetic field plus a pressureless cold
/// fluid of number density N and particle mass m0:
/// T_total = T_em + m0 N Ṽ⊗Ṽ.
pub fn dust_total_tensor(
    t_em: &SemTensor,
    number_density: f64,
    rest_mass: f64,
    v: &Velocity,
) -> Result<SemTensor> {
    if number_density < 0.0 {
        return Err(CoreError::InvalidArgument(
            "number density must be non-negative".into(),
        ));
    }
    let vd = v.dual();
    let m = t_em.m + outer(&vd, &vd) * (rest_mass * number_density);
    Ok(SemTensor { m })
}
