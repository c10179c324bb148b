//! Scenario file schema and its translation into core types.
//!
//! Velocities are always supplied as rapidity 3-vectors, so unit norm holds
//! by construction. Two-form components are given in the published basis
//! order (01, 02, 03, 23, 31, 12). Spatial 3×3 blocks are comoving with the
//! medium and get boosted into spacetime maps here.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use emdk_core::exterior::{PForm, ETA};
use emdk_core::fields::{SpacetimeField, Velocity};
use emdk_core::lorentz::LorentzTransform;
use emdk_core::media::{build_anisotropic, build_from_zeta, build_isotropic, ConstitutiveZ, ZetaBlocks};

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] emdk_core::CoreError),
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub medium: MediumSpec,
    pub field: FieldSpec,
    /// Observer rapidity for decompositions; defaults to the rest frame.
    #[serde(default)]
    pub observer: [f64; 3],
    pub tasks: Vec<Task>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Decompose,
    SemAbraham,
    SemMinkowski,
    PostInvariant,
    Classify,
    VerifyVariation,
    Selftest,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MediumSpec {
    Vacuum {
        #[serde(default)]
        velocity: [f64; 3],
    },
    Isotropic {
        eps: f64,
        mu: f64,
        #[serde(default)]
        velocity: [f64; 3],
    },
    Anisotropic {
        /// Comoving spatial permittivity map, 3×3 symmetric.
        eps_matrix: [[f64; 3]; 3],
        /// Comoving spatial inverse permeability map, 3×3 symmetric.
        mu_inv_matrix: [[f64; 3]; 3],
        #[serde(default)]
        velocity: [f64; 3],
    },
    Zeta {
        zde: [[f64; 3]; 3],
        zdb: [[f64; 3]; 3],
        zhe: [[f64; 3]; 3],
        zhb: [[f64; 3]; 3],
        #[serde(default)]
        velocity: [f64; 3],
    },
    Matrix {
        /// Full 6×6 constitutive matrix in the published 2-form order.
        matrix: [[f64; 6]; 6],
        #[serde(default)]
        velocity: [f64; 3],
    },
}

impl MediumSpec {
    pub fn velocity(&self) -> Result<Velocity> {
        let w = match self {
            MediumSpec::Vacuum { velocity }
            | MediumSpec::Isotropic { velocity, .. }
            | MediumSpec::Anisotropic { velocity, .. }
            | MediumSpec::Zeta { velocity, .. }
            | MediumSpec::Matrix { velocity, .. } => velocity,
        };
        if !w.iter().all(|v| v.is_finite()) {
            return Err(ScenarioError::Invalid(
                "medium velocity rapidity must be finite".into(),
            ));
        }
        Ok(Velocity::from_rapidity(w))
    }

    pub fn constitutive(&self) -> Result<ConstitutiveZ> {
        let v = self.velocity()?;
        match self {
            MediumSpec::Vacuum { .. } => Ok(ConstitutiveZ::identity()),
            MediumSpec::Isotropic { eps, mu, .. } => Ok(build_isotropic(*eps, *mu, &v)?),
            MediumSpec::Anisotropic {
                eps_matrix,
                mu_inv_matrix,
                velocity,
            } => {
                let eps = boost_spatial_block(eps_matrix, velocity);
                let mu_inv = boost_spatial_block(mu_inv_matrix, velocity);
                Ok(build_anisotropic(&eps, &mu_inv, &v)?)
            }
            MediumSpec::Zeta {
                zde,
                zdb,
                zhe,
                zhb,
                velocity,
            } => {
                let blocks = ZetaBlocks {
                    zde: boost_spatial_block(zde, velocity),
                    zdb: boost_spatial_block(zdb, velocity),
                    zhe: boost_spatial_block(zhe, velocity),
                    zhb: boost_spatial_block(zhb, velocity),
                    velocity: v,
                };
                Ok(build_from_zeta(&blocks)?)
            }
            MediumSpec::Matrix { matrix, .. } => {
                let m = matrix.iter().flatten().all(|c| c.is_finite());
                if !m {
                    return Err(ScenarioError::Invalid(
                        "constitutive matrix entries must be finite".into(),
                    ));
                }
                Ok(ConstitutiveZ::from_matrix6(matrix))
            }
        }
    }
}

/// Embed a comoving spatial 3×3 block as a spacetime map on 1-forms and
/// express it in the global frame. With B the boost whose time axis is the
/// medium velocity, 1-form components transform as α' = Bᵀα, so
/// ζ = B⁻ᵀ diag(0, M) Bᵀ.
fn boost_spatial_block(block: &[[f64; 3]; 3], rapidity: &[f64; 3]) -> Matrix4<f64> {
    let mut rest = Matrix4::zeros();
    for i in 0..3 {
        for j in 0..3 {
            rest[(i + 1, j + 1)] = block[i][j];
        }
    }
    let b = *LorentzTransform::boost(rapidity).matrix();
    let eta = Matrix4::from_diagonal(&nalgebra::Vector4::new(ETA[0], ETA[1], ETA[2], ETA[3]));
    // B⁻¹ = η Bᵀ η, hence B⁻ᵀ = η B η
    (eta * b * eta) * rest * b.transpose()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Uniform {
        /// 2-form components in the published order (01, 02, 03, 23, 31, 12).
        components: [f64; 6],
    },
    PlaneWave {
        amplitude: f64,
        direction: [f64; 3],
        polarization: [f64; 3],
        /// Evaluation point for pointwise tasks; defaults to the origin.
        #[serde(default)]
        point: [f64; 4],
    },
}

impl FieldSpec {
    /// The field 2-form at the scenario's evaluation point.
    pub fn value(&self) -> Result<PForm> {
        match self {
            FieldSpec::Uniform { components } => {
                if !components.iter().all(|c| c.is_finite()) {
                    return Err(ScenarioError::Invalid(
                        "field components must be finite".into(),
                    ));
                }
                Ok(PForm::from_bivector6(components))
            }
            FieldSpec::PlaneWave {
                amplitude,
                direction,
                polarization,
                point,
            } => {
                let field = SpacetimeField::plane_wave(*amplitude, *direction, *polarization)?;
                Ok(field.sample(point))
            }
        }
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        let scenario: Scenario = serde_json::from_str(text)
            .map_err(|e| ScenarioError::Invalid(format!("{e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tasks.is_empty() {
            return Err(ScenarioError::Invalid("task list must be non-empty".into()));
        }
        if !self.observer.iter().all(|v| v.is_finite()) {
            return Err(ScenarioError::Invalid(
                "observer rapidity must be finite".into(),
            ));
        }
        // surface medium/field problems at load time with a field diagnostic
        self.medium
            .constitutive()
            .map_err(|e| ScenarioError::Invalid(format!("medium: {e}")))?;
        self.field
            .value()
            .map_err(|e| ScenarioError::Invalid(format!("field: {e}")))?;
        Ok(())
    }

    pub fn observer_velocity(&self) -> Velocity {
        Velocity::from_rapidity(&self.observer)
    }
}
