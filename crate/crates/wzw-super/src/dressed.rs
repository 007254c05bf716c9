use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use cocycle_calculus::{
    b_power, calibrate_phi, word, C0Form, Coboundary, Cochain, CocycleError, CocycleP, Combination,
    EtaP, Evaluator, GrassmannConnection, LieElement, Operator, PhiPotential, Slot, TraceFunction,
    TraceWordSum, C0,
};
use fourier_core::sample::{complex_gaussian, one_sided_loop, rng_from_seed};
use fourier_core::{CMat, Complex64, LoopElement};

use crate::currents::Currents;
use crate::diffop::{Atom, DiffOp, FieldFunction, FieldState, Monomial};
use crate::fock::{BosonicRealization, FockSpace, Mode};
use crate::operator::FockOperator;
use crate::structure::StructureConstants;
use crate::{Result, WzwError};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const BRACKET_TOL: f64 = 1e-10;
/// Modes `|k| <= PROBE_REACH` carry the random matrices of the probe functions.
const PROBE_REACH: i64 = 2;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn dual(mode: Mode) -> Mode {
    Mode::new(mode.color, -mode.index)
}

/// Matrix generators `T^a` of the fiber representation, `[T^a, T^b] = lambda^{abc} T^c`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopBasis {
    generators: Vec<CMat>,
}

impl LoopBasis {
    /// `T^a = -(i / (2 sqrt 2)) sigma_a` on `C^2`.
    pub fn su2() -> Self {
        let c = Complex64::new(0.0, -1.0 / (2.0 * std::f64::consts::SQRT_2));
        let (o, z, i) = (ONE, Complex64::default(), I);
        let sigma = [
            CMat::from_row_slice(2, 2, &[z, o, o, z]),
            CMat::from_row_slice(2, 2, &[z, -i, i, z]),
            CMat::from_row_slice(2, 2, &[o, z, z, -o]),
        ];
        Self {
            generators: sigma.iter().map(|s| s * c).collect(),
        }
    }

    pub fn new(sc: &StructureConstants, generators: Vec<CMat>) -> Result<Self> {
        if generators.len() != sc.dim() {
            return Err(WzwError::TensorShape {
                expected: sc.dim(),
                found: generators.len(),
            });
        }
        let basis = Self { generators };
        let defect = basis.bracket_defect(sc);
        if defect > BRACKET_TOL {
            return Err(WzwError::JacobiViolated { defect });
        }
        Ok(basis)
    }

    /// Largest entry of `[T^a, T^b] - lambda^{abc} T^c`.
    pub fn bracket_defect(&self, sc: &StructureConstants) -> f64 {
        let n = self.generators.len();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let (ta, tb) = (&self.generators[a], &self.generators[b]);
                let mut d = ta * tb - tb * ta;
                for c in 0..n {
                    d -= &self.generators[c] * re(sc.get(a, b, c));
                }
                worst = worst.max(fourier_core::max_abs(&d));
            }
        }
        worst
    }

    pub fn fiber(&self) -> usize {
        self.generators[0].nrows()
    }

    /// The loop `T^a z^n`.
    pub fn loop_of(&self, mode: Mode) -> LoopElement {
        LoopElement::monomial(mode.index, self.generators[mode.color].clone())
    }
}

/// How the currents are shifted by functions of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dressing {
    /// `eta = 0`; the bracket carries the smooth cocycle `k_bar c_0`.
    Undressed,
    /// `eta = -k_bar sum_{j<=p} eta^_j`, bracket cocycle `k_bar c^_{p+1}`.
    Order(usize),
}

impl Dressing {
    fn cocycle_order(self) -> usize {
        match self {
            Dressing::Undressed => 0,
            Dressing::Order(p) => p + 1,
        }
    }
}

/// Window radius the dressed checks need: the cochain budget at the top order plus
/// room for two further Lie derivatives.
pub fn dressing_radius(dressing: Dressing, cutoff: usize, b_bandwidth: usize) -> usize {
    (2 * dressing.cocycle_order() + 5) * cutoff.max(b_bandwidth) + 2 * cutoff
}

/// Dressed currents `S(X) = K(X) + L_X + eta(X; B)`, the dressed supercharge and its
/// Hamiltonian, realized as differential operators in `B` with Fock-matrix coefficients.
pub struct DressedAlgebra<'a> {
    fock: &'a FockSpace,
    alpha: f64,
    dressing: Dressing,
    ev: Evaluator,
    elements: BTreeMap<Mode, LieElement>,
    eta: Option<Combination>,
    cocycle: Combination,
    smooth: C0,
    probes: Vec<TraceFunction>,
    values: Mutex<HashMap<Atom, Complex64>>,
    psi: BTreeMap<Mode, Arc<FockOperator>>,
    k: BTreeMap<Mode, Arc<FockOperator>>,
    psi_k: BTreeMap<Mode, Arc<FockOperator>>,
    pairs: HashMap<(Mode, Mode), Arc<FockOperator>>,
    free_part: Arc<FockOperator>,
    columns: Vec<usize>,
    level: usize,
    supercharge: DiffOp,
    hamiltonian: DiffOp,
}

fn probe_matrix(rng: &mut fourier_core::sample::SeededRng, ev: &Evaluator) -> Arc<Operator> {
    let window = ev.window();
    let n = window.dim();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if window.mode_of(i).abs() <= PROBE_REACH && window.mode_of(j).abs() <= PROBE_REACH {
                m[(i, j)] = complex_gaussian(rng);
            }
        }
    }
    Arc::new(Operator::new(m))
}

fn eta_cochain(p: usize, alpha: f64) -> Combination {
    let terms = (0..=p)
        .map(|j| {
            (
                re(-alpha),
                Box::new(EtaP::normalized(j)) as Box<dyn Cochain>,
            )
        })
        .collect();
    Combination::new("eta_dressed", terms)
}

fn cocycle_cochain(dressing: Dressing, alpha: f64) -> Combination {
    let order = dressing.cocycle_order();
    let scale = alpha * 2f64.powi(-4 * order as i32);
    Combination::new(
        "c_dressed",
        vec![(
            re(scale),
            Box::new(CocycleP { p: order }) as Box<dyn Cochain>,
        )],
    )
}

impl<'a> DressedAlgebra<'a> {
    /// `level` selects the checked states; `probe_seed` draws the test functions
    /// `Tr(W_1 B)` and `Tr(W_2 B W_3 B)`.
    pub fn new(
        fock: &'a FockSpace,
        currents: &Currents,
        conn: &GrassmannConnection,
        basis: &LoopBasis,
        dressing: Dressing,
        level: usize,
        probe_seed: u64,
    ) -> Result<Self> {
        if fock.realization() != BosonicRealization::TrivialK0 {
            return Err(WzwError::WrongRealization("trivial level-zero"));
        }
        if basis.fiber() != conn.window().fiber() {
            return Err(WzwError::Fourier(
                fourier_core::FourierError::DimensionMismatch {
                    expected: conn.window().fiber(),
                    found: basis.fiber(),
                },
            ));
        }
        let cutoff = fock.cutoff();
        let required = dressing_radius(dressing, cutoff, conn.bandwidth());
        if conn.window().radius() < required {
            return Err(CocycleError::WindowTooSmall {
                radius: conn.window().radius(),
                required,
            }
            .into());
        }
        fock.check_budget(0, level)?;
        let alpha = fock.structure().h_dual() / 4.0;
        let ev = Evaluator::new(conn);
        let mut elements = BTreeMap::new();
        for mode in fock.modes() {
            elements.insert(mode, ev.element(&basis.loop_of(mode))?);
        }
        let mut rng = rng_from_seed(probe_seed);
        let w: Vec<Arc<Operator>> = (0..3).map(|_| probe_matrix(&mut rng, &ev)).collect();
        let op = |m: &Arc<Operator>| vec![Slot::op(m)];
        let probes = vec![
            TraceFunction {
                name: "probe_linear".into(),
                sum: TraceWordSum::single(ONE, word([op(&w[0]), b_power(1)])),
                budget: 4,
            },
            TraceFunction {
                name: "probe_quadratic".into(),
                sum: TraceWordSum::single(
                    ONE,
                    word([op(&w[1]), b_power(1), op(&w[2]), b_power(1)]),
                ),
                budget: 4,
            },
        ];

        let mut psi = BTreeMap::new();
        let mut k = BTreeMap::new();
        for mode in fock.modes() {
            psi.insert(mode, Arc::new(fock.psi(mode)?.clone()));
            k.insert(mode, Arc::new(currents.k(mode)?.clone()));
        }
        let psi_k = fock
            .modes()
            .map(|m| (m, Arc::new(psi[&m].mul(&k[&dual(m)]))))
            .collect();
        let mut pairs = HashMap::new();
        for x in fock.modes() {
            for y in fock.modes() {
                pairs.insert((x, y), Arc::new(psi[&x].mul(&psi[&y])));
            }
        }
        let coupling = crate::currents::CouplingData::for_space(fock);
        let free_part = Arc::new(crate::currents::hamiltonian(fock, currents, &coupling)?);
        let eta = match dressing {
            Dressing::Undressed => None,
            Dressing::Order(p) => Some(eta_cochain(p, alpha)),
        };
        let mut algebra = Self {
            fock,
            alpha,
            dressing,
            ev,
            elements,
            eta,
            cocycle: cocycle_cochain(dressing, alpha),
            smooth: C0 {
                form: C0Form::Smooth,
            },
            probes,
            values: Mutex::new(HashMap::new()),
            psi,
            k,
            psi_k,
            pairs,
            free_part,
            columns: fock.safe_states(level),
            level,
            supercharge: DiffOp::new(),
            hamiltonian: DiffOp::new(),
        };
        algebra.supercharge = algebra.build_supercharge();
        algebra.hamiltonian = algebra.build_hamiltonian();
        Ok(algebra)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dressing(&self) -> Dressing {
        self.dressing
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.ev
    }

    pub fn element(&self, mode: Mode) -> Result<&LieElement> {
        self.elements.get(&mode).ok_or(WzwError::ModeOutOfRange {
            mode: mode.index,
            cutoff: self.fock.cutoff(),
        })
    }

    fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        self.fock.modes()
    }

    fn eta_atom(&self, mode: Mode, directions: Vec<Mode>) -> Option<Monomial> {
        self.eta
            .as_ref()
            .map(|_| vec![Atom::derived(FieldFunction::Eta(mode), directions)])
    }

    pub fn psi(&self, mode: Mode) -> DiffOp {
        DiffOp::fock(&self.psi[&mode])
    }

    /// `S(T^a z^n) = K^a_n + L_{T^a z^n} + eta^a_n`.
    pub fn current(&self, mode: Mode) -> DiffOp {
        let mut s = DiffOp::fock(&self.k[&mode]);
        s.add_scaled(ONE, &DiffOp::derivation(mode));
        if let Some(eta) = self.eta_atom(mode, Vec::new()) {
            s.push(ONE, eta, None, Vec::new());
        }
        s
    }

    /// `Q = i sum psi^b_m (L + K/3 + eta)^b_{-m}`.
    fn build_supercharge(&self) -> DiffOp {
        let mut q = DiffOp::new();
        for m in self.modes() {
            let psi = Some(Arc::clone(&self.psi[&m]));
            q.push(I, Vec::new(), psi.clone(), vec![dual(m)]);
            q.push(
                I / 3.0,
                Vec::new(),
                Some(Arc::clone(&self.psi_k[&m])),
                Vec::new(),
            );
            if let Some(eta) = self.eta_atom(dual(m), Vec::new()) {
                q.push(I, eta, psi, Vec::new());
            }
        }
        q
    }

    /// `h = -sum L_n L_{-n} + k_bar sum_{n>0} n psi_n psi_{-n} + N/24
    ///      - 2 sum eta_{-n} (L_n + K_n) - sum eta_n eta_{-n} - sum psi_n psi_m L_{-n} eta_{-m}`.
    fn build_hamiltonian(&self) -> DiffOp {
        let mut h = DiffOp::fock(&self.free_part);
        for n in self.modes() {
            h.push(-ONE, Vec::new(), None, vec![n, dual(n)]);
        }
        if self.eta.is_none() {
            return h;
        }
        for n in self.modes() {
            let eta = vec![Atom::plain(FieldFunction::Eta(dual(n)))];
            h.push(re(-2.0), eta.clone(), None, vec![n]);
            h.push(re(-2.0), eta, Some(Arc::clone(&self.k[&n])), Vec::new());
            let square = vec![
                Atom::plain(FieldFunction::Eta(n)),
                Atom::plain(FieldFunction::Eta(dual(n))),
            ];
            h.push(-ONE, square, None, Vec::new());
            for m in self.modes() {
                let derived = vec![Atom::derived(FieldFunction::Eta(dual(m)), vec![dual(n)])];
                h.push(
                    -ONE,
                    derived,
                    Some(Arc::clone(&self.pairs[&(n, m)])),
                    Vec::new(),
                );
            }
        }
        h
    }

    pub fn supercharge(&self) -> &DiffOp {
        &self.supercharge
    }

    pub fn hamiltonian(&self) -> &DiffOp {
        &self.hamiltonian
    }

    fn cocycle_atom(&self, x: Mode, y: Mode, directions: Vec<Mode>) -> Monomial {
        vec![Atom::derived(FieldFunction::Cocycle(x, y), directions)]
    }

    /// Value of an atom at the fixed `B`, memoized.
    pub fn atom_value(&self, atom: &Atom) -> Result<Complex64> {
        if let Some(v) = self.values.lock().expect("atom cache").get(atom) {
            return Ok(*v);
        }
        let dirs: Vec<LieElement> = atom
            .directions
            .iter()
            .map(|d| self.element(*d).cloned())
            .collect::<Result<_>>()?;
        let value = match &atom.function {
            FieldFunction::Eta(m) => match &self.eta {
                Some(eta) => self
                    .ev
                    .derivative_value(eta, &[self.element(*m)?.clone()], &dirs)?,
                None => Complex64::default(),
            },
            FieldFunction::Cocycle(x, y) => {
                let args = [self.element(*x)?.clone(), self.element(*y)?.clone()];
                self.ev.derivative_value(&self.cocycle, &args, &dirs)?
            }
            FieldFunction::Probe(i) => self.ev.derivative_value(&self.probes[*i], &[], &dirs)?,
        };
        self.values
            .lock()
            .expect("atom cache")
            .insert(atom.clone(), value);
        Ok(value)
    }

    /// `c(T^a z^n, T^b z^m; B)`.
    pub fn cocycle_value(&self, x: Mode, y: Mode) -> Result<Complex64> {
        self.atom_value(&Atom::plain(FieldFunction::Cocycle(x, y)))
    }

    /// `eta(T^a z^n; B)`.
    pub fn eta_value(&self, mode: Mode) -> Result<Complex64> {
        self.atom_value(&Atom::plain(FieldFunction::Eta(mode)))
    }

    /// Ratio of the bracket cocycle to `k_bar (1/2) Tr(X dY)` on the pair `(T^a z^n, T^a z^{-n})`.
    pub fn smooth_ratio(&self, mode: Mode) -> Result<f64> {
        let args = [
            self.element(mode)?.clone(),
            self.element(dual(mode))?.clone(),
        ];
        let smooth = self.ev.value(&self.smooth, &args)?;
        Ok((self.cocycle_value(mode, dual(mode))? / (smooth * self.alpha)).re)
    }

    fn monomial_value(&self, mono: &Monomial) -> Result<Complex64> {
        let mut v = ONE;
        for a in mono {
            v *= self.atom_value(a)?;
        }
        Ok(v)
    }

    /// `op` applied to `state`, evaluated at `B` and compressed to the safe rows.
    fn evaluate_applied(&self, op: &DiffOp, state: &FieldState) -> Result<CMat> {
        op.apply_evaluated(state, &self.columns, |m| self.monomial_value(m))
    }

    fn distance(&self, lhs: &CMat, rhs: &CMat) -> f64 {
        let scale = fourier_core::max_abs(rhs).max(1.0);
        fourier_core::max_abs(&(lhs - rhs)) / scale
    }

    /// Test states `f(B) |v>` for the constant function and each probe, `v` safe.
    pub fn probe_states(&self) -> Vec<FieldState> {
        let dim = self.fock.dim();
        std::iter::once(None)
            .chain((0..self.probes.len()).map(|i| Some(FieldFunction::Probe(i))))
            .map(|f| FieldState::probe(f, dim, &self.columns))
            .collect()
    }

    fn commutator_on(&self, a: &DiffOp, b: &DiffOp, state: &FieldState, sign: f64) -> Result<CMat> {
        let ab = self.evaluate_applied(a, &b.apply(state))?;
        let ba = self.evaluate_applied(b, &a.apply(state))?;
        Ok(ab - ba * re(sign))
    }

    /// Largest residual of `[a, b]_(sign) = rhs` over the probe states; `sign = -1` for
    /// the anticommutator.
    fn check(
        &self,
        a: &DiffOp,
        b: &DiffOp,
        rhs: &DiffOp,
        states: &[FieldState],
        sign: f64,
    ) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for s in states {
            let lhs = self.commutator_on(a, b, s, sign)?;
            worst = worst.max(self.distance(&lhs, &self.evaluate_applied(rhs, s)?));
        }
        Ok(worst)
    }

    fn sum_over_modes(&self, mut f: impl FnMut(Mode) -> DiffOp) -> DiffOp {
        let mut out = DiffOp::new();
        for m in self.modes() {
            out.add_scaled(ONE, &f(m));
        }
        out
    }

    /// Mode pairs `(n, m)` with `|n| + |m| <= span`.
    fn pairs_within(&self, span: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for n in -span..=span {
            for m in -span..=span {
                if n.abs() + m.abs() <= span {
                    out.push((n, m));
                }
            }
        }
        out
    }

    /// Evaluates every bracket of the dressed table on the safe states. Modes are
    /// restricted to `|n| + |m| <= cutoff - level - 1`. `[h, S]` and `[Q, h]` are taken on
    /// the constant-function sector only: on a probe function the truncated double mode
    /// sums in `h` leave a boundary term that does not shrink with the cutoff.
    pub fn bracket_table(&self) -> Result<BracketTable> {
        let cutoff = self.fock.cutoff();
        let span = cutoff - self.level - 1;
        self.fock.check_budget(span, self.level)?;
        let span = span as i64;
        let colors = self.fock.colors();
        let sc = self.fock.structure();
        let states = self.probe_states();
        let constant_state = &states[..1];
        let q = &self.supercharge;
        let h = &self.hamiltonian;
        let mut entries = Vec::new();
        let mut record =
            |id: &'static str, residual: f64| entries.push(BracketEntry { id, residual });

        let singles: Vec<Mode> = (0..colors)
            .flat_map(|a| (-span..=span).map(move |n| Mode::new(a, n)))
            .collect();
        let pairs = self.pairs_within(span);

        let mut worst: f64 = 0.0;
        for &(n, m) in &pairs {
            for a in 0..colors {
                for b in 0..colors {
                    let (x, y) = (Mode::new(a, n), Mode::new(b, m));
                    let expected = if x == dual(y) {
                        DiffOp::scalar(re(2.0))
                    } else {
                        DiffOp::new()
                    };
                    worst = worst.max(self.check(
                        &self.psi(x),
                        &self.psi(y),
                        &expected,
                        constant_state,
                        -1.0,
                    )?);
                }
            }
        }
        record("anticommutator_psi_psi", worst);

        let mut worst_ss: f64 = 0.0;
        let mut worst_spsi: f64 = 0.0;
        for &(n, m) in &pairs {
            for a in 0..colors {
                for b in 0..colors {
                    let (x, y) = (Mode::new(a, n), Mode::new(b, m));
                    let mut rhs = DiffOp::new();
                    let mut rhs_psi = DiffOp::new();
                    for c in 0..colors {
                        let l = sc.get(a, b, c);
                        if l != 0.0 {
                            rhs.add_scaled(re(l), &self.current(Mode::new(c, n + m)));
                            rhs_psi.add_scaled(re(l), &self.psi(Mode::new(c, n + m)));
                        }
                    }
                    rhs.push(ONE, self.cocycle_atom(x, y, Vec::new()), None, Vec::new());
                    worst_ss = worst_ss.max(self.check(
                        &self.current(x),
                        &self.current(y),
                        &rhs,
                        &states,
                        1.0,
                    )?);
                    worst_spsi = worst_spsi.max(self.check(
                        &self.current(x),
                        &self.psi(y),
                        &rhs_psi,
                        &states,
                        1.0,
                    )?);
                }
            }
        }
        record("bracket_s_s", worst_ss);
        record("bracket_s_psi", worst_spsi);

        let (mut w_psi_q, mut w_s_q, mut w_psi_h, mut w_h_s) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for &x in &singles {
            let s = self.current(x);
            w_psi_q =
                w_psi_q.max(self.check(&self.psi(x), q, &s.scaled(re(2.0) * I), &states, -1.0)?);

            // sum_{b,m} c(x, T^b z^{-m}) psi^b_m
            let c_psi = self.sum_over_modes(|m| {
                self.psi(m)
                    .times_monomial(&self.cocycle_atom(x, dual(m), Vec::new()))
            });
            w_s_q = w_s_q.max(self.check(&s, q, &c_psi.scaled(I), &states, 1.0)?);
            w_psi_h =
                w_psi_h.max(self.check(&self.psi(x), h, &c_psi.scaled(re(-2.0)), &states, 1.0)?);

            let mut rhs = DiffOp::new();
            for m in self.modes() {
                rhs.add_scaled(
                    re(2.0),
                    &self
                        .current(m)
                        .times_monomial(&self.cocycle_atom(x, dual(m), Vec::new())),
                );
                for d in self.modes() {
                    let lc = self.cocycle_atom(x, dual(m), vec![dual(d)]);
                    rhs.push(ONE, lc, Some(Arc::clone(&self.pairs[&(d, m)])), Vec::new());
                }
            }
            // Two mode sums meet here; on probe functions their truncations do not commute.
            w_h_s = w_h_s.max(self.check(h, &s, &rhs, constant_state, 1.0)?);
        }
        record("anticommutator_psi_q", w_psi_q);
        record("bracket_s_q", w_s_q);
        record("bracket_psi_h", w_psi_h);
        record("bracket_h_s", w_h_s);

        let (mut w_s_f, mut w_q_f, mut w_h_f) = (0.0f64, 0.0f64, 0.0f64);
        for i in 0..self.probes.len() {
            let f = FieldFunction::Probe(i);
            let mult = DiffOp::function(Atom::plain(f.clone()));
            let lf = |dirs: Vec<Mode>| vec![Atom::derived(f.clone(), dirs)];
            for &x in &singles {
                let mut rhs = DiffOp::new();
                rhs.push(ONE, lf(vec![x]), None, Vec::new());
                w_s_f =
                    w_s_f.max(self.check(&self.current(x), &mult, &rhs, constant_state, 1.0)?);
            }
            let rhs_q =
                self.sum_over_modes(|m| self.psi(m).times_monomial(&lf(vec![dual(m)])).scaled(I));
            w_q_f = w_q_f.max(self.check(q, &mult, &rhs_q, constant_state, 1.0)?);
            let mut rhs_h = DiffOp::new();
            for m in self.modes() {
                rhs_h.add_scaled(
                    re(-2.0),
                    &self.current(m).compose_function(&lf(vec![dual(m)])),
                );
                for d in self.modes() {
                    rhs_h.push(
                        ONE,
                        lf(vec![dual(d), dual(m)]),
                        Some(Arc::clone(&self.pairs[&(m, d)])),
                        Vec::new(),
                    );
                }
            }
            w_h_f = w_h_f.max(self.check(h, &mult, &rhs_h, constant_state, 1.0)?);
        }
        record("bracket_s_f", w_s_f);
        record("bracket_q_f", w_q_f);
        record("bracket_h_f", w_h_f);

        let mut w_sq: f64 = 0.0;
        for s in &states {
            w_sq = w_sq.max(self.distance(
                &self.evaluate_applied(q, &q.apply(s))?,
                &self.evaluate_applied(h, s)?,
            ));
        }
        record("square_q_h", w_sq);
        let w_qh = self.check(q, h, &DiffOp::new(), constant_state, 1.0)?;
        record("bracket_q_h", w_qh);

        let probe = Mode::new(0, 1);
        Ok(BracketTable {
            dressing: self.dressing,
            entries,
            central_value: self.cocycle_value(probe, dual(probe))?,
            smooth_ratio: self.smooth_ratio(probe)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry {
    pub id: &'static str,
    pub residual: f64,
}

/// Residuals of the dressed bracket table, plus the bracket cocycle on `(T^1 z, T^1 z^{-1})`
/// and its ratio to `k_bar (1/2) Tr(X dY)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketTable {
    pub dressing: Dressing,
    pub entries: Vec<BracketEntry>,
    pub central_value: Complex64,
    pub smooth_ratio: f64,
}

impl BracketTable {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn residual(&self, id: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.id == id).map(|e| e.residual)
    }
}

/// Outcome of the dressed-vacuum check.
#[derive(Debug, Clone, PartialEq)]
pub struct VacuumReport {
    /// `max_X |eta(X; B) - L_X Phi(B)|` over negative-mode basis loops.
    pub residual: f64,
    /// `max_X |eta(X; B)|`, nonzero whenever `B` is.
    pub undressed_defect: f64,
    /// `max_X |K(X) |Omega_0>|`.
    pub annihilation: f64,
    /// Fitted `kappa_j` for `j <= p`; empty at `B = 0`.
    pub kappas: Vec<f64>,
}

/// Checks that `e^{-Phi(B)} |Omega_0>` is annihilated by the dressed currents of all
/// negative-mode loops, `Phi = sum_j -k_bar 2^{-(4j+2)} kappa_j Tr(eps B^{2j+1})`.
pub fn dressed_vacuum_check(
    fock: &FockSpace,
    currents: &Currents,
    conn: &GrassmannConnection,
    basis: &LoopBasis,
    p: usize,
    seed: u64,
) -> Result<VacuumReport> {
    let dressing = Dressing::Order(p);
    let required = dressing_radius(dressing, fock.cutoff(), conn.bandwidth());
    if conn.window().radius() < required {
        return Err(CocycleError::WindowTooSmall {
            radius: conn.window().radius(),
            required,
        }
        .into());
    }
    let alpha = fock.structure().h_dual() / 4.0;
    let ev = Evaluator::new(conn);
    let eta = eta_cochain(p, alpha);
    let negative: Vec<Mode> = fock.modes().filter(|m| m.index < 0).collect();
    let directions: Vec<LieElement> = negative
        .iter()
        .map(|m| ev.element(&basis.loop_of(*m)))
        .collect::<std::result::Result<_, _>>()?;

    let mut annihilation: f64 = 0.0;
    for m in &negative {
        let k = currents.k(*m)?;
        let column: f64 = (0..fock.dim())
            .map(|r| k.entry(r, fock.vacuum()).norm())
            .fold(0.0, f64::max);
        annihilation = annihilation.max(column);
    }

    let mut undressed_defect: f64 = 0.0;
    let mut etas = Vec::with_capacity(directions.len());
    for x in &directions {
        let v = ev.value(&eta, std::slice::from_ref(x))?;
        undressed_defect = undressed_defect.max(v.norm());
        etas.push(v);
    }
    let flat_zero = fourier_core::max_abs(conn.b().matrix()) == 0.0;
    if flat_zero {
        return Ok(VacuumReport {
            residual: undressed_defect,
            undressed_defect,
            annihilation,
            kappas: Vec::new(),
        });
    }

    let mut rng = rng_from_seed(seed);
    let batch: Vec<LieElement> = (0..6)
        .map(|_| ev.element(&one_sided_loop(&mut rng, basis.fiber(), 2, -1)))
        .collect::<std::result::Result<_, _>>()?;
    let mut kappas = Vec::new();
    let mut terms: Vec<(Complex64, Box<dyn Cochain>)> = Vec::new();
    for j in 0..=p {
        let cal =
            calibrate_phi(&ev, j, &batch).map_err(|e| WzwError::Uncalibrated(e.to_string()))?;
        kappas.push(cal.kappa);
        let weight = -alpha * 2f64.powi(-(4 * j as i32 + 2)) * cal.kappa;
        terms.push((
            re(1.0),
            Box::new(PhiPotential {
                p: j,
                kappa: weight,
            }),
        ));
    }
    let phi = Coboundary(Combination::new("phi_dressed", terms));
    let mut residual: f64 = 0.0;
    for (x, eta_x) in directions.iter().zip(&etas) {
        let grad = ev.value(&phi, std::slice::from_ref(x))?;
        residual = residual.max((eta_x - grad).norm());
    }
    Ok(VacuumReport {
        residual,
        undressed_defect,
        annihilation,
        kappas,
    })
}
