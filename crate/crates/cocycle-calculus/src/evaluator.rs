use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use fourier_core::{toeplitz_embed, BlockOperator, CMat, Complex64, LoopElement, ModeWindow};
use rayon::prelude::*;

use crate::cochain::Cochain;
use crate::grassmann::GrassmannConnection;
use crate::operator::{word_trace, Operator};
use crate::words::{LieElement, Slot, TraceWordSum};
use crate::{CocycleError, Result};

/// Evaluates trace words at a fixed connection `B`, caching derived operators.
#[derive(Debug)]
pub struct Evaluator {
    window: ModeWindow,
    eps: Arc<Operator>,
    plus: Arc<Operator>,
    minus: Arc<Operator>,
    b: Arc<Operator>,
    b_bandwidth: usize,
    paths: Mutex<HashMap<Vec<u64>, Arc<Operator>>>,
    brackets: Mutex<HashMap<(u64, u64), LieElement>>,
}

/// Value of a cochain together with what is needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct CochainValueRecord {
    pub name: String,
    pub arguments: Vec<u64>,
    pub connection: u64,
    pub value: Complex64,
    pub radius: usize,
    pub interior_margin: usize,
}

fn projector(window: ModeWindow, positive: bool) -> Operator {
    let n = window.dim();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        if (window.mode_of(i) >= 0) == positive {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
    }
    Operator::new(m)
}

impl Evaluator {
    pub fn new(conn: &GrassmannConnection) -> Self {
        let window = conn.window();
        Self {
            window,
            eps: Arc::new(Operator::new(
                BlockOperator::polarization(window).into_matrix(),
            )),
            plus: Arc::new(projector(window, true)),
            minus: Arc::new(projector(window, false)),
            b: Arc::new(Operator::new(conn.b().matrix().clone())),
            b_bandwidth: conn.bandwidth(),
            paths: Mutex::new(HashMap::new()),
            brackets: Mutex::new(HashMap::new()),
        }
    }

    pub fn window(&self) -> ModeWindow {
        self.window
    }

    pub fn connection_id(&self) -> u64 {
        self.b.id()
    }

    pub fn epsilon(&self) -> &Arc<Operator> {
        &self.eps
    }

    /// Spectral projector onto modes `k >= 0` (`positive`) or `k < 0`.
    pub fn projector(&self, positive: bool) -> &Arc<Operator> {
        if positive {
            &self.plus
        } else {
            &self.minus
        }
    }

    pub fn connection(&self) -> &Arc<Operator> {
        &self.b
    }

    pub fn element(&self, x: &LoopElement) -> Result<LieElement> {
        let m = toeplitz_embed(x, self.window)?;
        Ok(LieElement::from_parts(
            Operator::new(m.into_matrix()),
            &self.eps,
            x.bandwidth(),
        ))
    }

    /// `[a, b]` as window commutator; memoized so repeated brackets share derived operators.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let key = (a.id(), b.id());
        if let Some(hit) = self.brackets.lock().expect("bracket cache").get(&key) {
            return hit.clone();
        }
        let x = a.x.commutator(&b.x);
        let element = LieElement::from_parts(x, &self.eps, a.bandwidth() + b.bandwidth());
        self.brackets
            .lock()
            .expect("bracket cache")
            .insert(key, element.clone());
        element
    }

    /// Operator in a connection slot after the Lie derivatives in `path`:
    /// `[ ... [[B, U_k] + dU_k, U_{k-1}] ... , U_1]`.
    pub fn connection_derivative(&self, path: &[LieElement]) -> Arc<Operator> {
        if path.is_empty() {
            return Arc::clone(&self.b);
        }
        let key: Vec<u64> = path.iter().map(LieElement::id).collect();
        if let Some(hit) = self.paths.lock().expect("path cache").get(&key) {
            return Arc::clone(hit);
        }
        let first = &path[0];
        let op = if path.len() == 1 {
            self.b.commutator(&first.x).add(&first.dx)
        } else {
            self.connection_derivative(&path[1..]).commutator(&first.x)
        };
        let op = Arc::new(op);
        self.paths
            .lock()
            .expect("path cache")
            .insert(key, Arc::clone(&op));
        op
    }

    fn resolve(&self, slot: &Slot) -> Arc<Operator> {
        match slot {
            Slot::Connection(path) => self.connection_derivative(path),
            Slot::Fixed(op) => Arc::clone(op),
        }
    }

    /// Terms are added in consecutive pairs first, so a sum whose terms come as
    /// `(w(X, Y), -w(Y, X))` pairs changes sign exactly when the arguments are swapped.
    pub fn eval(&self, sum: &TraceWordSum) -> Complex64 {
        let resolved: Vec<(Complex64, Vec<Arc<Operator>>)> = sum
            .terms()
            .iter()
            .map(|(c, w)| (*c, w.iter().map(|s| self.resolve(s)).collect()))
            .collect();
        let traces: Vec<Complex64> = resolved
            .par_iter()
            .map(|(c, ops)| {
                let refs: Vec<&Operator> = ops.iter().map(Arc::as_ref).collect();
                *c * word_trace(&refs)
            })
            .collect();
        traces
            .chunks(2)
            .map(|pair| pair.iter().sum::<Complex64>())
            .sum()
    }

    fn check(&self, cochain: &dyn Cochain, args: &[LieElement]) -> Result<()> {
        if args.len() != cochain.degree() {
            return Err(CocycleError::ArityMismatch {
                expected: cochain.degree(),
                found: args.len(),
            });
        }
        let bandwidth = args
            .iter()
            .map(LieElement::bandwidth)
            .chain([self.b_bandwidth])
            .max()
            .unwrap_or(0);
        let required = cochain.required_radius(bandwidth);
        if self.window.radius() < required {
            return Err(CocycleError::WindowTooSmall {
                radius: self.window.radius(),
                required,
            });
        }
        Ok(())
    }

    pub fn value(&self, cochain: &dyn Cochain, args: &[LieElement]) -> Result<Complex64> {
        self.check(cochain, args)?;
        Ok(self.eval(&cochain.expand(args, self)))
    }

    /// `L_{U_1} ... L_{U_k}` applied to the cochain value, innermost direction last.
    pub fn derivative_value(
        &self,
        cochain: &dyn Cochain,
        args: &[LieElement],
        directions: &[LieElement],
    ) -> Result<Complex64> {
        self.check(cochain, args)?;
        let mut sum = cochain.expand(args, self);
        for u in directions.iter().rev() {
            sum = sum.lie_derivative(u);
        }
        Ok(self.eval(&sum))
    }

    pub fn record(&self, cochain: &dyn Cochain, args: &[LieElement]) -> Result<CochainValueRecord> {
        let value = self.value(cochain, args)?;
        let bandwidth = args
            .iter()
            .map(LieElement::bandwidth)
            .chain([self.b_bandwidth])
            .max()
            .unwrap_or(0);
        Ok(CochainValueRecord {
            name: cochain.name(),
            arguments: args.iter().map(LieElement::id).collect(),
            connection: self.connection_id(),
            value,
            radius: self.window.radius(),
            interior_margin: cochain.required_radius(bandwidth),
        })
    }
}
