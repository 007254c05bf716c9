use fourier_core::Complex64;

use crate::evaluator::Evaluator;
use crate::words::{b_power, word, LieElement, Slot, TraceWordSum, Word};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pow2(e: i32) -> f64 {
    2f64.powi(e)
}

/// A Lie-algebra cochain with values that are trace polynomials in `B`.
pub trait Cochain: Send + Sync {
    fn degree(&self) -> usize;
    fn name(&self) -> String;
    /// Smallest window radius on which the value is exact, given the largest bandwidth in play.
    fn required_radius(&self, bandwidth: usize) -> usize;
    fn expand(&self, args: &[LieElement], ev: &Evaluator) -> TraceWordSum;
}

impl<C: Cochain + ?Sized> Cochain for Box<C> {
    fn degree(&self) -> usize {
        (**self).degree()
    }
    fn name(&self) -> String {
        (**self).name()
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        (**self).required_radius(bandwidth)
    }
    fn expand(&self, args: &[LieElement], ev: &Evaluator) -> TraceWordSum {
        (**self).expand(args, ev)
    }
}

fn order_budget(p: usize, bandwidth: usize) -> usize {
    (2 * p + 5) * bandwidth
}

fn x(e: &LieElement) -> Word {
    vec![Slot::op(e.operator())]
}

fn dx(e: &LieElement) -> Word {
    vec![Slot::op(e.differential())]
}

/// Palais coboundary
/// `sum_j (-1)^j L_{X_j} w(..^j..) + sum_{i<j} (-1)^{i+j} w([X_i, X_j], ..^i..^j..)`
/// with zero-based argument positions.
#[derive(Debug, Clone)]
pub struct Coboundary<C>(pub C);

impl<C: Cochain> Cochain for Coboundary<C> {
    fn degree(&self) -> usize {
        self.0.degree() + 1
    }

    fn name(&self) -> String {
        format!("delta({})", self.0.name())
    }

    fn required_radius(&self, bandwidth: usize) -> usize {
        self.0.required_radius(bandwidth)
    }

    fn expand(&self, args: &[LieElement], ev: &Evaluator) -> TraceWordSum {
        let n = args.len();
        let mut out = TraceWordSum::new();
        let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        for j in 0..n {
            let rest: Vec<LieElement> = args
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, a)| a.clone())
                .collect();
            out.extend_scaled(
                re(sign(j)),
                self.0.expand(&rest, ev).lie_derivative(&args[j]),
            );
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut rest = vec![ev.bracket(&args[i], &args[j])];
                rest.extend(
                    args.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, a)| a.clone()),
                );
                out.extend_scaled(re(sign(i + j)), self.0.expand(&rest, ev));
            }
        }
        out
    }
}

/// Fixed linear combination of cochains of equal degree.
pub struct Combination {
    name: String,
    terms: Vec<(Complex64, Box<dyn Cochain>)>,
}

impl Combination {
    pub fn new(name: impl Into<String>, terms: Vec<(Complex64, Box<dyn Cochain>)>) -> Self {
        let degrees: Vec<usize> = terms.iter().map(|(_, c)| c.degree()).collect();
        assert!(
            degrees.windows(2).all(|w| w[0] == w[1]),
            "combined cochains must share a degree"
        );
        Self {
            name: name.into(),
            terms,
        }
    }
}

impl Cochain for Combination {
    fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(_, c)| c.degree())
    }
    fn name(&self) -> String {
        self.name.clone()
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        self.terms
            .iter()
            .map(|(_, c)| c.required_radius(bandwidth))
            .max()
            .unwrap_or(0)
    }
    fn expand(&self, args: &[LieElement], ev: &Evaluator) -> TraceWordSum {
        let mut out = TraceWordSum::new();
        for (f, c) in &self.terms {
            out.extend_scaled(*f, c.expand(args, ev));
        }
        out
    }
}

/// `Tr(B^{2p+1} X)`.
#[derive(Debug, Clone, Copy)]
pub struct TildeEta {
    pub p: usize,
}

impl Cochain for TildeEta {
    fn degree(&self) -> usize {
        1
    }
    fn name(&self) -> String {
        format!("tilde_eta_{}", self.p)
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        order_budget(self.p, bandwidth)
    }
    fn expand(&self, args: &[LieElement], _ev: &Evaluator) -> TraceWordSum {
        TraceWordSum::single(re(1.0), word([b_power(2 * self.p + 1), x(&args[0])]))
    }
}

/// `2^{2p} sum_{k=0}^{p} (-1)^k Tr(B^{2p+1-k} X B^k Y - B^{2p+1-k} Y B^k X)`.
#[derive(Debug, Clone, Copy)]
pub struct TildeC {
    pub p: usize,
}

impl Cochain for TildeC {
    fn degree(&self) -> usize {
        2
    }
    fn name(&self) -> String {
        format!("tilde_c_{}", self.p)
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        order_budget(self.p, bandwidth)
    }
    fn expand(&self, args: &[LieElement], _ev: &Evaluator) -> TraceWordSum {
        let p = self.p;
        let scale = pow2(2 * p as i32);
        let mut out = TraceWordSum::new();
        for k in 0..=p {
            let s = if k % 2 == 0 { scale } else { -scale };
            out.push(
                re(s),
                word([b_power(2 * p + 1 - k), x(&args[0]), b_power(k), x(&args[1])]),
            );
            out.push(
                re(-s),
                word([b_power(2 * p + 1 - k), x(&args[1]), b_power(k), x(&args[0])]),
            );
        }
        out
    }
}

/// Closed form `-2^{2p} sum_{m=0}^{p} Tr(B^{2m} dX B^{2p-2m} Y - B^{2m} dY B^{2p-2m} X)`.
#[derive(Debug, Clone, Copy)]
pub struct CocycleP {
    pub p: usize,
}

impl Cochain for CocycleP {
    fn degree(&self) -> usize {
        2
    }
    fn name(&self) -> String {
        format!("c_{}", self.p)
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        order_budget(self.p, bandwidth)
    }
    fn expand(&self, args: &[LieElement], _ev: &Evaluator) -> TraceWordSum {
        let p = self.p;
        let scale = -pow2(2 * p as i32);
        let mut out = TraceWordSum::new();
        for m in 0..=p {
            out.push(
                re(scale),
                word([
                    b_power(2 * m),
                    dx(&args[0]),
                    b_power(2 * p - 2 * m),
                    x(&args[1]),
                ]),
            );
            out.push(
                re(-scale),
                word([
                    b_power(2 * m),
                    dx(&args[1]),
                    b_power(2 * p - 2 * m),
                    x(&args[0]),
                ]),
            );
        }
        out
    }
}

/// `c_p` through the coboundary route `tilde_c_p - 2^{2p} delta(tilde_eta_p)`.
pub fn cocycle_via_coboundary(p: usize) -> Combination {
    Combination::new(
        format!("c_{p}_coboundary_route"),
        vec![
            (re(1.0), Box::new(TildeC { p })),
            (
                re(-pow2(2 * p as i32)),
                Box::new(Coboundary(TildeEta { p })),
            ),
        ],
    )
}

/// Rescaled cocycle `2^{-4p} c_p`.
pub fn normalized_cocycle(p: usize) -> Combination {
    Combination::new(
        format!("c_hat_{p}"),
        vec![(re(pow2(-4 * p as i32)), Box::new(CocycleP { p }))],
    )
}

/// Independent reduction of `delta(tilde_eta_p)`:
/// `Tr(B^{2p+1}[X,Y]) + sum_{k=0}^{2p} Tr(B^k dX B^{2p-k} Y - B^k dY B^{2p-k} X)`.
#[derive(Debug, Clone, Copy)]
pub struct TildeEtaCoboundaryReduced {
    pub p: usize,
}

impl Cochain for TildeEtaCoboundaryReduced {
    fn degree(&self) -> usize {
        2
    }
    fn name(&self) -> String {
        format!("delta_tilde_eta_{}_reduced", self.p)
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        order_budget(self.p, bandwidth)
    }
    fn expand(&self, args: &[LieElement], ev: &Evaluator) -> TraceWordSum {
        let p = self.p;
        let bracket = ev.bracket(&args[0], &args[1]);
        let mut out = TraceWordSum::single(re(1.0), word([b_power(2 * p + 1), x(&bracket)]));
        for k in 0..=2 * p {
            out.push(
                re(1.0),
                word([b_power(k), dx(&args[0]), b_power(2 * p - k), x(&args[1])]),
            );
            out.push(
                re(-1.0),
                word([b_power(k), dx(&args[1]), b_power(2 * p - k), x(&args[0])]),
            );
        }
        out
    }
}

/// `coefficient * Tr(eps B^{2p+1} dX)`.
#[derive(Debug, Clone, Copy)]
pub struct EtaP {
    pub p: usize,
    pub coefficient: f64,
}

impl EtaP {
    /// The cochain with prefactor `2^{2p+1}`.
    pub fn standard(p: usize) -> Self {
        Self {
            p,
            coefficient: pow2(2 * p as i32 + 1),
        }
    }

    /// Prefactor `2^{-(2p+1)}`, matching the rescaled cocycles `2^{-4p} c_p`.
    pub fn normalized(p: usize) -> Self {
        Self {
            p,
            coefficient: pow2(-(2 * p as i32 + 1)),
        }
    }
}

impl Cochain for EtaP {
    fn degree(&self) -> usize {
        1
    }
    fn name(&self) -> String {
        format!("eta_{}[{}]", self.p, self.coefficient)
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        order_budget(self.p, bandwidth)
    }
    fn expand(&self, args: &[LieElement], ev: &Evaluator) -> TraceWordSum {
        let eps = vec![Slot::op(ev.epsilon())];
        TraceWordSum::single(
            re(self.coefficient),
            word([eps, b_power(2 * self.p + 1), dx(&args[0])]),
        )
    }
}

/// Which of the three expressions for the basic cocycle to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C0Form {
    /// `(1/8) Tr(eps [dX, dY])`.
    EpsilonBracket,
    /// `Tr(X_{+-} Y_{-+} - Y_{+-} X_{-+})`.
    Blocks,
    /// `(1/2) Tr(X dY)`.
    Smooth,
}

#[derive(Debug, Clone, Copy)]
pub struct C0 {
    pub form: C0Form,
}

impl Cochain for C0 {
    fn degree(&self) -> usize {
        2
    }
    fn name(&self) -> String {
        format!("c0_{:?}", self.form).to_lowercase()
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        4 * bandwidth
    }
    fn expand(&self, args: &[LieElement], ev: &Evaluator) -> TraceWordSum {
        let (a, b) = (&args[0], &args[1]);
        let mut out = TraceWordSum::new();
        match self.form {
            C0Form::EpsilonBracket => {
                let eps = vec![Slot::op(ev.epsilon())];
                out.push(re(0.125), word([eps.clone(), dx(a), dx(b)]));
                out.push(re(-0.125), word([eps, dx(b), dx(a)]));
            }
            C0Form::Blocks => {
                // X_{+-} = (1/2) P+ dX and Y_{-+} = -(1/2) P- dY
                let plus = vec![Slot::op(ev.projector(true))];
                let minus = vec![Slot::op(ev.projector(false))];
                out.push(re(-0.25), word([plus.clone(), dx(a), minus.clone(), dx(b)]));
                out.push(re(0.25), word([plus, dx(b), minus, dx(a)]));
            }
            C0Form::Smooth => out.push(re(0.5), word([x(a), dx(b)])),
        }
        out
    }
}

/// `-(1/16) Tr([X, eps][F, eps])` with `F = eps + B`.
#[derive(Debug, Clone, Copy)]
pub struct EtaF;

impl Cochain for EtaF {
    fn degree(&self) -> usize {
        1
    }
    fn name(&self) -> String {
        "eta_F".into()
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        order_budget(0, bandwidth)
    }
    fn expand(&self, args: &[LieElement], ev: &Evaluator) -> TraceWordSum {
        let eps = vec![Slot::op(ev.epsilon())];
        let mut out = TraceWordSum::new();
        out.push(
            re(1.0 / 16.0),
            word([dx(&args[0]), b_power(1), eps.clone()]),
        );
        out.push(re(-1.0 / 16.0), word([dx(&args[0]), eps, b_power(1)]));
        out
    }
}

/// `(1/8) Tr([dX, dY](eps - F)) = -(1/8) Tr([dX, dY] B)`.
#[derive(Debug, Clone, Copy)]
pub struct C2F;

impl Cochain for C2F {
    fn degree(&self) -> usize {
        2
    }
    fn name(&self) -> String {
        "c2_F".into()
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        order_budget(0, bandwidth)
    }
    fn expand(&self, args: &[LieElement], _ev: &Evaluator) -> TraceWordSum {
        let mut out = TraceWordSum::new();
        out.push(re(-0.125), word([dx(&args[0]), dx(&args[1]), b_power(1)]));
        out.push(re(0.125), word([dx(&args[1]), dx(&args[0]), b_power(1)]));
        out
    }
}

/// Potential `kappa Tr(eps B^{2p+1})`, a function of `B` alone.
#[derive(Debug, Clone, Copy)]
pub struct PhiPotential {
    pub p: usize,
    pub kappa: f64,
}

impl Cochain for PhiPotential {
    fn degree(&self) -> usize {
        0
    }
    fn name(&self) -> String {
        format!("phi_{}", self.p)
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        order_budget(self.p, bandwidth)
    }
    fn expand(&self, _args: &[LieElement], ev: &Evaluator) -> TraceWordSum {
        let eps = vec![Slot::op(ev.epsilon())];
        TraceWordSum::single(re(self.kappa), word([eps, b_power(2 * self.p + 1)]))
    }
}

/// A function of `B` given directly as a trace-word sum (degree 0).
#[derive(Debug, Clone)]
pub struct TraceFunction {
    pub name: String,
    pub sum: TraceWordSum,
    pub budget: usize,
}

impl Cochain for TraceFunction {
    fn degree(&self) -> usize {
        0
    }
    fn name(&self) -> String {
        self.name.clone()
    }
    fn required_radius(&self, bandwidth: usize) -> usize {
        self.budget * bandwidth
    }
    fn expand(&self, _args: &[LieElement], _ev: &Evaluator) -> TraceWordSum {
        self.sum.clone()
    }
}
