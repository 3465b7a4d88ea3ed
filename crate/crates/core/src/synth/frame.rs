//! The two irrational rotations built from `H` and `T`.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::gates::{Gate, GateWord};
use crate::matrix::Unitary;
use crate::su2::{axis_angle_of, pauli_power, so3_of, su2_exp, Axis};

/// `lambda` with `cos(lambda pi) = cos^2(pi/8) = (2 + sqrt 2)/4`.
pub fn lambda() -> f64 {
    ((2.0 + 2f64.sqrt()) / 4.0).acos() / std::f64::consts::PI
}

/// The rotation constant, both axes, and words realizing
/// `e^{i lambda pi n1·sigma}` and `e^{i lambda pi n2·sigma}` up to phase.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaFrame {
    pub lambda: f64,
    pub axis1: Vector3<f64>,
    pub axis2: Vector3<f64>,
    /// `[Tdag, H, T, H] = sigma_z^{-1/4} sigma_x^{1/4}`.
    pub gen1_word: GateWord,
    /// `C · gen1 · C^{-1}` with `C` from [`axis_conjugator`].
    pub gen2_word: GateWord,
    pub conjugator: GateWord,
}

impl LambdaFrame {
    /// `e^{i angle axis·sigma}` for `axis` one of the frame axes.
    pub fn rotation(&self, angle: f64, axis: &Vector3<f64>) -> Unitary<f64> {
        su2_exp(angle, axis)
    }

    /// `H^{-1/2} gen1 H^{1/2}`, the non-basis realization of the second rotation.
    pub fn gen2_by_hadamard_root(&self) -> Unitary<f64> {
        let root = pauli_power::<f64>(Axis::H, 0.5);
        let g1 = self.gen1_word.numeric::<f64>().expect("single-qubit word");
        &(&root.adjoint() * &g1) * &root
    }

    pub fn report(&self) -> FrameReport {
        FrameReport {
            lambda: self.lambda,
            cos_lambda_pi: (self.lambda * std::f64::consts::PI).cos(),
            expected_cos: (2.0 + 2f64.sqrt()) / 4.0,
            axis1: self.axis1.into(),
            axis2: self.axis2.into(),
            axis_dot: self.axis1.dot(&self.axis2),
            gen1_word: self.gen1_word.names().iter().map(|s| s.to_string()).collect(),
            gen2_word: self.gen2_word.names().iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FrameReport {
    pub lambda: f64,
    pub cos_lambda_pi: f64,
    pub expected_cos: f64,
    pub axis1: [f64; 3],
    pub axis2: [f64; 3],
    pub axis_dot: f64,
    pub gen1_word: Vec<String>,
    pub gen2_word: Vec<String>,
}

fn axes() -> (Vector3<f64>, Vector3<f64>) {
    let c = 1.0 / (std::f64::consts::PI / 8.0).tan();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let n1 = Vector3::new(-c, 1.0, c).normalize();
    let n2 = Vector3::new(r, 2f64.sqrt() * c, -r).normalize();
    (n1, n2)
}

/// Shortest `{H, T, Tdag}` word `C` whose rotation carries `from` onto `to`.
///
/// Breadth-first over reduced words, deduplicated by SO(3) image.
pub fn find_axis_conjugator(from: &Vector3<f64>, to: &Vector3<f64>, max_len: usize) -> Option<GateWord> {
    let key = |m: &Unitary<f64>| -> [i64; 9] {
        let r = so3_of(m).expect("2x2");
        let mut k = [0i64; 9];
        for (slot, x) in k.iter_mut().zip(r.iter()) {
            *slot = (x * 1e8).round() as i64;
        }
        k
    };
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let id = Unitary::identity(2);
    seen.insert(key(&id));
    queue.push_back((Vec::<Gate>::new(), id));
    while let Some((word, m)) = queue.pop_front() {
        let r = so3_of(&m).expect("2x2");
        if (r * from - to).norm() < 1e-10 {
            return Some(GateWord::single(&word).expect("single-qubit gates"));
        }
        if word.len() >= max_len {
            continue;
        }
        for g in [Gate::H, Gate::T, Gate::Tdag] {
            let next = &m * &g.matrix::<f64>();
            if seen.insert(key(&next)) {
                let mut w = word.clone();
                w.push(g);
                queue.push_back((w, next));
            }
        }
    }
    None
}

/// Cached conjugator taking `axis1` to `axis2`.
pub fn axis_conjugator() -> &'static GateWord {
    static CONJ: OnceLock<GateWord> = OnceLock::new();
    CONJ.get_or_init(|| {
        let (n1, n2) = axes();
        find_axis_conjugator(&n1, &n2, 16).expect("a Clifford+T conjugator exists within 16 gates")
    })
}

pub fn lambda_frame() -> LambdaFrame {
    let (axis1, axis2) = axes();
    let gen1_word = GateWord::single(&[Gate::Tdag, Gate::H, Gate::T, Gate::H]).expect("single-qubit gates");
    let conjugator = axis_conjugator().clone();
    let gen2_word = conjugator.concat(&gen1_word).and_then(|w| w.concat(&conjugator.inverse())).expect("equal widths");
    LambdaFrame { lambda: lambda(), axis1, axis2, gen1_word, gen2_word, conjugator }
}

/// Rotation cosine of `gen1` read off its axis-angle form.
pub fn gen1_rotation_cosine(frame: &LambdaFrame) -> f64 {
    let aa = axis_angle_of(&frame.gen1_word.numeric::<f64>().expect("single-qubit word")).expect("unitary");
    aa.angle.cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::proj_distance;

    #[test]
    fn lambda_value() {
        let f = lambda_frame();
        assert!((f.lambda - 0.174_442_860_055_105_8).abs() < 1e-15);
        assert!(((f.lambda * std::f64::consts::PI).cos() - 0.853_553_390_593_273_7).abs() < 1e-14);
        assert!(f.axis1.dot(&f.axis2).abs() < 1e-12);
    }

    #[test]
    fn generators_have_frame_axes() {
        let f = lambda_frame();
        let angle = f.lambda * std::f64::consts::PI;
        let g1 = f.gen1_word.numeric::<f64>().unwrap();
        assert!(proj_distance(&g1, &f.rotation(angle, &f.axis1)).unwrap() < 1e-12);
        let g2 = f.gen2_word.numeric::<f64>().unwrap();
        assert!(proj_distance(&g2, &f.rotation(angle, &f.axis2)).unwrap() < 1e-12);
        assert!(proj_distance(&g2, &f.gen2_by_hadamard_root()).unwrap() < 1e-12);
    }

    #[test]
    fn conjugator_uses_basis_alphabet() {
        let c = axis_conjugator();
        assert!(c.gates.iter().all(|g| matches!(g.gate, Gate::H | Gate::T | Gate::Tdag)));
        assert!(!c.is_empty());
    }
}
