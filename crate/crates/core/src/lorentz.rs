//! Proper orthochronous Lorentz transformations of the orthonormal frame,
//! used to re-express tensors in boosted or rotated frames.

use nalgebra::{Matrix4, Matrix6};

use crate::exterior::{PForm, Vector4, BASIS_2, ETA};

/// A frame transformation Λ with Λᵀ η Λ = η, det Λ = +1 and Λ⁰₀ > 0.
/// `matrix[a][b]` is Λ^a_b: the new coframe is f^a = Λ^a_b e^b.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzTransform {
    matrix: Matrix4<f64>,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        LorentzTransform {
            matrix: Matrix4::identity(),
        }
    }

    /// Pure boost with rapidity 3-vector w: hyperbolic rotation mixing the
    /// time axis with the ŵ direction by angle ‖w‖.
    pub fn boost(w: &[f64; 3]) -> Self {
        let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        if n == 0.0 {
            return Self::identity();
        }
        let dir = [w[0] / n, w[1] / n, w[2] / n];
        let ch = n.cosh();
        let sh = n.sinh();
        let mut m = Matrix4::identity();
        m[(0, 0)] = ch;
        for i in 0..3 {
            m[(0, i + 1)] = sh * dir[i];
            m[(i + 1, 0)] = sh * dir[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] = if i == j { 1.0 } else { 0.0 } + (ch - 1.0) * dir[i] * dir[j];
            }
        }
        LorentzTransform { matrix: m }
    }

    /// Spatial rotation by `angle` about the given axis (Rodrigues form).
    pub fn rotation(axis: &[f64; 3], angle: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n == 0.0 {
            return Self::identity();
        }
        let u = [axis[0] / n, axis[1] / n, axis[2] / n];
        let (s, c) = angle.sin_cos();
        let mut m = Matrix4::identity();
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                let mut cross = 0.0;
                // ε_{ikj} u_k
                for k in 0..3 {
                    let sign = match (i, k, j) {
                        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                        _ => 0.0,
                    };
                    cross += sign * u[k];
                }
                m[(i + 1, j + 1)] = c * delta + s * cross + (1.0 - c) * u[i] * u[j];
            }
        }
        LorentzTransform { matrix: m }
    }

    /// Composition: apply `self` after `other`.
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        LorentzTransform {
            matrix: self.matrix * other.matrix,
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    /// Largest violation of Λᵀ η Λ = η; zero for exact group elements.
    pub fn eta_violation(&self) -> f64 {
        let eta = Matrix4::from_diagonal(&nalgebra::Vector4::new(
            ETA[0], ETA[1], ETA[2], ETA[3],
        ));
        let g = self.matrix.transpose() * eta * self.matrix;
        (g - eta).abs().max()
    }

    /// Components of a vector in the transformed frame: X'^a = Λ^a_b X^b.
    pub fn transform_vector(&self, x: &Vector4) -> Vector4 {
        let mut out = [0.0; 4];
        for a in 0..4 {
            for b in 0..4 {
                out[a] += self.matrix[(a, b)] * x.0[b];
            }
        }
        Vector4(out)
    }

    /// Components of a 1-form in the transformed frame: α'_a = (Λ⁻ᵀ)_a{}^b α_b.
    /// For Lorentz maps Λ⁻¹ = η Λᵀ η.
    pub fn transform_one_form(&self, alpha: &PForm) -> PForm {
        assert_eq!(alpha.degree(), 1);
        let inv = self.inverse_matrix();
        let mut out = [0.0; 4];
        for a in 0..4 {
            for b in 0..4 {
                // α'_a = α(Y_a) with Y_a the new frame vectors, Y_a^b = (Λ⁻¹)^b_a
                out[a] += inv[(b, a)] * alpha.components()[b];
            }
        }
        PForm::from_components(1, &out)
    }

    fn inverse_matrix(&self) -> Matrix4<f64> {
        let eta = Matrix4::from_diagonal(&nalgebra::Vector4::new(
            ETA[0], ETA[1], ETA[2], ETA[3],
        ));
        eta * self.matrix.transpose() * eta
    }

    /// Basis-change matrix on 2-form components (internal lexicographic
    /// order): column J holds the e-basis components of f^{J}.
    pub fn two_form_basis_change(&self) -> Matrix6<f64> {
        let mut p = Matrix6::zeros();
        for (col, &(c, d)) in BASIS_2.iter().enumerate() {
            for (row, &(a, b)) in BASIS_2.iter().enumerate() {
                p[(row, col)] = self.matrix[(c, a)] * self.matrix[(d, b)]
                    - self.matrix[(c, b)] * self.matrix[(d, a)];
            }
        }
        p
    }

    /// Components of a 2-form re-expressed in the transformed frame.
    pub fn transform_two_form(&self, f: &PForm) -> PForm {
        assert_eq!(f.degree(), 2);
        let p = self.two_form_basis_change();
        let inv = p
            .try_inverse()
            .expect("Lorentz-induced 2-form change is invertible");
        let v = nalgebra::Vector6::from_row_slice(f.components());
        let out = inv * v;
        PForm::from_components(2, out.as_slice())
    }
}
