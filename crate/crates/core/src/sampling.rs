//! Seeded random inputs at unit scale, shared by the property tests, the
//! acceptance suite and the CLI self-test so that every consumer draws from
//! the same distributions.

use rand::Rng;

use crate::exterior::{PForm, Vector4, COMP_COUNT};
use crate::fields::Velocity;
use crate::media::ConstitutiveZ;
use crate::variation::CoframeVariation;

/// Uniform component in [−1, 1].
pub fn unit_scalar<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

/// Random p-form with components uniform in [−1, 1].
pub fn random_form<R: Rng>(rng: &mut R, degree: usize) -> PForm {
    let comps: Vec<f64> = (0..COMP_COUNT[degree]).map(|_| unit_scalar(rng)).collect();
    PForm::from_components(degree, &comps)
}

/// Random vector with components uniform in [−1, 1].
pub fn random_vector<R: Rng>(rng: &mut R) -> Vector4 {
    Vector4([
        unit_scalar(rng),
        unit_scalar(rng),
        unit_scalar(rng),
        unit_scalar(rng),
    ])
}

/// Random rapidity 3-vector with norm bounded by `max_norm`.
pub fn random_rapidity<R: Rng>(rng: &mut R, max_norm: f64) -> [f64; 3] {
    loop {
        let w: [f64; 3] = [
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        ];
        let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        if n <= 1.0 {
            return [w[0] * max_norm, w[1] * max_norm, w[2] * max_norm];
        }
    }
}

/// Random unit future-pointing timelike velocity with rapidity ≤ `max_rapidity`.
pub fn random_velocity<R: Rng>(rng: &mut R, max_rapidity: f64) -> Velocity {
    Velocity::from_rapidity(&random_rapidity(rng, max_rapidity))
}

/// Random constitutive tensor on the full 36-component space.
pub fn random_constitutive<R: Rng>(rng: &mut R) -> ConstitutiveZ {
    let mut m = [[0.0; 6]; 6];
    for row in &mut m {
        for v in row.iter_mut() {
            *v = unit_scalar(rng);
        }
    }
    ConstitutiveZ::from_matrix6(&m)
}

/// Random self-adjoint constitutive tensor, spanning the 21-parameter family.
pub fn random_self_adjoint_constitutive<R: Rng>(rng: &mut R) -> ConstitutiveZ {
    random_constitutive(rng).self_adjoint_part()
}

/// Random coframe perturbation with each ė^a bounded by `scale`.
pub fn random_coframe_variation<R: Rng>(rng: &mut R, scale: f64) -> CoframeVariation {
    let edot = [
        random_form(rng, 1).scale(scale),
        random_form(rng, 1).scale(scale),
        random_form(rng, 1).scale(scale),
        random_form(rng, 1).scale(scale),
    ];
    CoframeVariation::new(edot)
}
