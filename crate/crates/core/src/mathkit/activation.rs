//! Elementwise activations with analytic derivatives. The per-pass
//! derivative bounds (0.25 for sigmoid, 1.0 for tanh) are what make
//! repeated passes through a recurrent unit shrink gradients geometrically.

use super::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActivationKind {
    Sigmoid,
    Tanh,
    Relu,
    Identity,
}

impl ActivationKind {
    /// Upper bound of the derivative over all inputs: the per-pass factor
    /// in the geometric gradient-shrinkage bound.
    pub fn gamma_bound(self) -> f64 {
        match self {
            ActivationKind::Sigmoid => 0.25,
            ActivationKind::Tanh | ActivationKind::Relu | ActivationKind::Identity => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ActivationKind::Sigmoid => "sigmoid",
            ActivationKind::Tanh => "tanh",
            ActivationKind::Relu => "relu",
            ActivationKind::Identity => "identity",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "sigmoid" => Some(ActivationKind::Sigmoid),
            "tanh" => Some(ActivationKind::Tanh),
            "relu" => Some(ActivationKind::Relu),
            "identity" => Some(ActivationKind::Identity),
            _ => None,
        }
    }

    /// Value and derivative at a single point. The ReLU subgradient at 0 is 0.
    #[inline]
    pub fn eval<T: Real>(self, v: T) -> (T, T) {
        match self {
            ActivationKind::Sigmoid => {
                let s = T::one() / (T::one() + (-v).exp());
                (s, s * (T::one() - s))
            }
            ActivationKind::Tanh => {
                let t = v.tanh();
                (t, T::one() - t * t)
            }
            ActivationKind::Relu => {
                if v > T::zero() {
                    (v, T::one())
                } else {
                    (T::zero(), T::zero())
                }
            }
            ActivationKind::Identity => (v, T::one()),
        }
    }
}

/// Elementwise value and derivative vectors at `v`.
pub fn activate<T: Real>(kind: ActivationKind, v: &[T]) -> (Vec<T>, Vec<T>) {
    let mut value = Vec::with_capacity(v.len());
    let mut deriv = Vec::with_capacity(v.len());
    for &x in v {
        let (val, der) = kind.eval(x);
        value.push(val);
        deriv.push(der);
    }
    (value, deriv)
}
