//! Recurrent cells (vanilla, LSTM, GRU) with exact analytic backward passes,
//! stacked into a network with inter-layer dropout and a dense output head.
//!
//! Conventions: gate pre-activations are `W_input · x_t + W_hidden · h_{t-1}`
//! plus an optional per-gate bias; biases default off. All per-gate weight
//! matrices are `hidden x input` on the input side and `hidden x hidden` on
//! the hidden side.

mod gradcheck;
mod stack;
mod step;

pub use gradcheck::{
    check_case, default_matrix, run_matrix, GradcheckCase, GradcheckReport, GRADCHECK_EPSILON,
    GRADCHECK_TOLERANCE,
};
pub use stack::{
    stack_backward, stack_forward, DropoutMode, ForwardBuilder, ForwardPass, Gradients,
    StackForward,
};
pub use step::{cell_step, gru_step, lstm_step, vanilla_step, StepCache};

use crate::mathkit::{ActivationKind, MathError, Matrix, Real, Rng};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CellError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("vanilla cell activation must be tanh or relu, got {0}")]
    BadActivation(&'static str),
    #[error("cell state has {got} hidden units, parameters expect {want}")]
    StateMismatch { want: usize, got: usize },
    #[error("LSTM state is missing its cell vector")]
    MissingCellState,
    #[error("step cache does not match these parameters: {0}")]
    CacheMismatch(&'static str),
    #[error("forward window is empty")]
    EmptyWindow,
    #[error("network config invalid: {0}")]
    BadConfig(String),
}

/// Which recurrent cell a layer uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Vanilla(ActivationKind),
    Lstm,
    Gru,
}

impl CellKind {
    pub fn gate_count(self) -> usize {
        match self {
            CellKind::Vanilla(_) => 1,
            CellKind::Lstm => 4,
            CellKind::Gru => 3,
        }
    }

    /// Gate order is fixed; it defines tensor layout and checkpoint names.
    pub fn gate_names(self) -> &'static [&'static str] {
        match self {
            CellKind::Vanilla(_) => &["h"],
            CellKind::Lstm => &["i", "f", "g", "o"],
            CellKind::Gru => &["r", "z", "n"],
        }
    }

    pub fn has_cell_state(self) -> bool {
        matches!(self, CellKind::Lstm)
    }

    pub fn validate(self) -> Result<(), CellError> {
        if let CellKind::Vanilla(act) = self {
            if !matches!(act, ActivationKind::Tanh | ActivationKind::Relu) {
                return Err(CellError::BadActivation(act.name()));
            }
        }
        Ok(())
    }
}

/// One gate's parameters. Biases are column vectors stored as `hidden x 1`
/// matrices so every parameter tensor has a uniform shape.
#[derive(Debug, Clone, PartialEq)]
pub struct GateParams<T> {
    pub w_input: Matrix<T>,
    pub w_hidden: Matrix<T>,
    pub bias: Option<Matrix<T>>,
}

impl<T: Real> GateParams<T> {
    fn zeros(hidden: usize, input: usize, bias: bool) -> Self {
        GateParams {
            w_input: Matrix::zeros(hidden, input),
            w_hidden: Matrix::zeros(hidden, hidden),
            bias: bias.then(|| Matrix::zeros(hidden, 1)),
        }
    }

    pub fn bias_slice(&self) -> Option<&[T]> {
        self.bias.as_ref().map(Matrix::data)
    }
}

/// Parameters of one recurrent layer.
#[derive(Debug, Clone, PartialEq)]
pub struct CellParams<T> {
    pub kind: CellKind,
    pub gates: Vec<GateParams<T>>,
}

impl<T: Real> CellParams<T> {
    pub fn zeros(kind: CellKind, hidden: usize, input: usize, bias: bool) -> Result<Self, CellError> {
        kind.validate()?;
        let gates = (0..kind.gate_count())
            .map(|_| GateParams::zeros(hidden, input, bias))
            .collect();
        Ok(CellParams { kind, gates })
    }

    pub fn hidden_size(&self) -> usize {
        self.gates[0].w_hidden.rows()
    }

    pub fn input_size(&self) -> usize {
        self.gates[0].w_input.cols()
    }

    fn check_dims(&self, x: &[T], prev: &CellState<T>) -> Result<(), CellError> {
        if x.len() != self.input_size() {
            return Err(MathError::DimMismatch {
                op: "cell input",
                left_rows: self.hidden_size(),
                left_cols: self.input_size(),
                right_rows: x.len(),
                right_cols: 1,
            }
            .into());
        }
        if prev.h.len() != self.hidden_size() {
            return Err(CellError::StateMismatch { want: self.hidden_size(), got: prev.h.len() });
        }
        if self.kind.has_cell_state() {
            match &prev.c {
                Some(c) if c.len() == self.hidden_size() => {}
                Some(c) => {
                    return Err(CellError::StateMismatch { want: self.hidden_size(), got: c.len() })
                }
                None => return Err(CellError::MissingCellState),
            }
        }
        Ok(())
    }
}

/// Hidden state of one layer; `c` is present only for LSTM layers.
#[derive(Debug, Clone, PartialEq)]
pub struct CellState<T> {
    pub h: Vec<T>,
    pub c: Option<Vec<T>>,
}

impl<T: Real> CellState<T> {
    pub fn zeros(kind: CellKind, hidden: usize) -> Self {
        CellState {
            h: vec![T::zero(); hidden],
            c: kind.has_cell_state().then(|| vec![T::zero(); hidden]),
        }
    }
}

/// Dense output head mapping the top hidden state to the output dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHead<T> {
    pub weight: Matrix<T>,
    pub bias: Option<Matrix<T>>,
}

impl<T: Real> DenseHead<T> {
    pub fn apply(&self, h: &[T]) -> Result<Vec<T>, MathError> {
        crate::mathkit::affine(&self.weight, h, self.bias.as_ref().map(Matrix::data))
    }
}

/// Shape and initialization recipe for a uniform stack.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    pub kind: CellKind,
    pub layers: usize,
    pub hidden: usize,
    pub input_size: usize,
    pub output_size: usize,
    pub bias: bool,
    pub dropout_p: f64,
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<(), CellError> {
        self.kind.validate()?;
        let bad = |msg: String| Err(CellError::BadConfig(msg));
        if self.layers == 0 {
            return bad("layers must be >= 1".into());
        }
        if self.hidden == 0 || self.input_size == 0 || self.output_size == 0 {
            return bad("hidden, input and output sizes must be >= 1".into());
        }
        if !(0.0..1.0).contains(&self.dropout_p) {
            return bad(format!("dropout_p {} outside [0, 1)", self.dropout_p));
        }
        Ok(())
    }
}

/// A stack of recurrent layers plus the dense head. Dropout applies to
/// inter-layer activations only, never to the recurrent path.
#[derive(Debug, Clone, PartialEq)]
pub struct StackedNetwork<T> {
    pub layers: Vec<CellParams<T>>,
    pub dropout_p: f64,
    pub head: DenseHead<T>,
}

impl<T: Real> StackedNetwork<T> {
    /// Seeded init: every weight uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)],
    /// biases (when enabled) start at zero.
    pub fn init(cfg: &NetworkConfig, rng: &mut Rng) -> Result<Self, CellError> {
        cfg.validate()?;
        let mut layers = Vec::with_capacity(cfg.layers);
        for l in 0..cfg.layers {
            let input = if l == 0 { cfg.input_size } else { cfg.hidden };
            let mut params = CellParams::zeros(cfg.kind, cfg.hidden, input, cfg.bias)?;
            for gate in &mut params.gates {
                init_uniform(&mut gate.w_input, rng);
                init_uniform(&mut gate.w_hidden, rng);
            }
            layers.push(params);
        }
        let mut weight = Matrix::zeros(cfg.output_size, cfg.hidden);
        init_uniform(&mut weight, rng);
        let head = DenseHead { weight, bias: cfg.bias.then(|| Matrix::zeros(cfg.output_size, 1)) };
        Ok(StackedNetwork { layers, dropout_p: cfg.dropout_p, head })
    }

    pub fn input_size(&self) -> usize {
        self.layers[0].input_size()
    }

    pub fn output_size(&self) -> usize {
        self.head.weight.rows()
    }

    pub fn top_hidden_size(&self) -> usize {
        self.layers.last().expect("network has layers").hidden_size()
    }

    /// Fresh all-zero states, one per layer.
    pub fn zero_states(&self) -> Vec<CellState<T>> {
        self.layers.iter().map(|l| CellState::zeros(l.kind, l.hidden_size())).collect()
    }

    /// Named parameter tensors in fixed order (layers bottom-up, gates in
    /// declared order, `wi`/`wh`/`b` within a gate, then the head).
    pub fn tensors(&self) -> Vec<(String, &Matrix<T>)> {
        tensor_entries(&self.layers, &self.head)
    }

    pub fn tensors_mut(&mut self) -> Vec<(String, &mut Matrix<T>)> {
        tensor_entries_mut(&mut self.layers, &mut self.head)
    }

    pub fn param_count(&self) -> usize {
        self.tensors().iter().map(|(_, m)| m.data().len()).sum()
    }

    /// All parameters concatenated in tensor order.
    pub fn flat_params(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.param_count());
        for (_, m) in self.tensors() {
            out.extend_from_slice(m.data());
        }
        out
    }

    pub fn set_flat_params(&mut self, flat: &[T]) {
        let mut offset = 0;
        for (_, m) in self.tensors_mut() {
            let n = m.data().len();
            m.data_mut().copy_from_slice(&flat[offset..offset + n]);
            offset += n;
        }
        assert_eq!(offset, flat.len(), "flat parameter length mismatch");
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|(_, m)| m.is_finite())
    }
}

fn init_uniform<T: Real>(m: &mut Matrix<T>, rng: &mut Rng) {
    let bound = 1.0 / (m.cols() as f64).sqrt();
    for v in m.data_mut() {
        *v = T::from_config(rng.uniform(-bound, bound).expect("bound > 0"));
    }
}

fn tensor_entries<'a, T: Real>(
    layers: &'a [CellParams<T>],
    head: &'a DenseHead<T>,
) -> Vec<(String, &'a Matrix<T>)> {
    let mut out = Vec::new();
    for (l, layer) in layers.iter().enumerate() {
        for (gate, name) in layer.gates.iter().zip(layer.kind.gate_names()) {
            out.push((format!("layer{l}.{name}.wi"), &gate.w_input));
            out.push((format!("layer{l}.{name}.wh"), &gate.w_hidden));
            if let Some(b) = &gate.bias {
                out.push((format!("layer{l}.{name}.b"), b));
            }
        }
    }
    out.push(("head.w".to_string(), &head.weight));
    if let Some(b) = &head.bias {
        out.push(("head.b".to_string(), b));
    }
    out
}

fn tensor_entries_mut<'a, T: Real>(
    layers: &'a mut [CellParams<T>],
    head: &'a mut DenseHead<T>,
) -> Vec<(String, &'a mut Matrix<T>)> {
    let mut out = Vec::new();
    for (l, layer) in layers.iter_mut().enumerate() {
        for (gate, name) in layer.gates.iter_mut().zip(layer.kind.gate_names()) {
            out.push((format!("layer{l}.{name}.wi"), &mut gate.w_input));
            out.push((format!("layer{l}.{name}.wh"), &mut gate.w_hidden));
            if let Some(b) = &mut gate.bias {
                out.push((format!("layer{l}.{name}.b"), b));
            }
        }
    }
    out.push(("head.w".to_string(), &mut head.weight));
    if let Some(b) = &mut head.bias {
        out.push(("head.b".to_string(), b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(kind: CellKind) -> NetworkConfig {
        NetworkConfig {
            kind,
            layers: 2,
            hidden: 3,
            input_size: 2,
            output_size: 1,
            bias: true,
            dropout_p: 0.0,
        }
    }

    #[test]
    fn init_is_seed_deterministic() {
        let c = cfg(CellKind::Lstm);
        let a = StackedNetwork::<f64>::init(&c, &mut Rng::new(42)).unwrap();
        let b = StackedNetwork::<f64>::init(&c, &mut Rng::new(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn vanilla_rejects_sigmoid_activation() {
        let c = cfg(CellKind::Vanilla(ActivationKind::Sigmoid));
        assert!(matches!(
            StackedNetwork::<f64>::init(&c, &mut Rng::new(1)),
            Err(CellError::BadActivation("sigmoid"))
        ));
    }

    #[test]
    fn tensor_names_follow_gate_order() {
        let c = cfg(CellKind::Gru);
        let net = StackedNetwork::<f64>::init(&c, &mut Rng::new(1)).unwrap();
        let names: Vec<String> = net.tensors().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names[0], "layer0.r.wi");
        assert_eq!(names[1], "layer0.r.wh");
        assert_eq!(names[2], "layer0.r.b");
        assert_eq!(names.last().unwrap(), "head.b");
    }

    #[test]
    fn flat_params_round_trip() {
        let c = cfg(CellKind::Lstm);
        let net = StackedNetwork::<f64>::init(&c, &mut Rng::new(7)).unwrap();
        let flat = net.flat_params();
        assert_eq!(flat.len(), net.param_count());
        let mut copy = StackedNetwork::<f64>::init(&c, &mut Rng::new(8)).unwrap();
        copy.set_flat_params(&flat);
        assert_eq!(copy, net);
    }

    #[test]
    fn config_validation_catches_bad_values() {
        let mut c = cfg(CellKind::Lstm);
        c.dropout_p = 1.0;
        assert!(c.validate().is_err());
        c.dropout_p = 0.3;
        c.layers = 0;
        assert!(c.validate().is_err());
    }
}
