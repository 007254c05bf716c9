use std::collections::BTreeMap;
use std::sync::Arc;

use fourier_core::{CMat, Complex64};

use crate::fock::Mode;
use crate::operator::FockOperator;

/// A scalar function of the connection `B` that the dressed operators can produce.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldFunction {
    /// `eta(T^a z^n; B)`.
    Eta(Mode),
    /// `c(T^a z^n, T^b z^m; B)`.
    Cocycle(Mode, Mode),
    /// A test function `f(B)` from the probe list.
    Probe(usize),
}

/// `L_{d_0} ... L_{d_k} f`, the first direction outermost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub function: FieldFunction,
    pub directions: Vec<Mode>,
}

impl Atom {
    pub fn plain(function: FieldFunction) -> Self {
        Self {
            function,
            directions: Vec::new(),
        }
    }

    pub fn derived(function: FieldFunction, directions: Vec<Mode>) -> Self {
        Self {
            function,
            directions,
        }
    }
}

/// Product of atoms, kept sorted; the empty product is the constant 1.
pub type Monomial = Vec<Atom>;

fn product(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: Monomial = a.iter().chain(b).cloned().collect();
    out.sort();
    out
}

/// All terms of `L_{w_0} ... L_{w_k}` applied to a monomial, by the product rule.
fn differentiate(mono: &Monomial, word: &[Mode]) -> Vec<Monomial> {
    let mut current = vec![mono.clone()];
    for &direction in word.iter().rev() {
        let mut next = Vec::new();
        for m in &current {
            for i in 0..m.len() {
                let mut d = m.clone();
                d[i].directions.insert(0, direction);
                d.sort();
                next.push(d);
            }
        }
        current = next;
    }
    current
}

/// `coefficient * factors(B) * fock * L_{derivations}`.
#[derive(Debug, Clone)]
pub struct DiffTerm {
    pub coefficient: Complex64,
    pub factors: Monomial,
    pub fock: Option<Arc<FockOperator>>,
    pub derivations: Vec<Mode>,
}

/// Differential operator on `Fock (x) functions of B`: a sum of terms, each a function
/// of `B` times a Fock matrix times a word of Lie derivatives.
#[derive(Debug, Clone, Default)]
pub struct DiffOp {
    terms: Vec<DiffTerm>,
}

impl DiffOp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &[DiffTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(
        &mut self,
        coefficient: Complex64,
        factors: Monomial,
        fock: Option<Arc<FockOperator>>,
        derivations: Vec<Mode>,
    ) {
        if coefficient == Complex64::default() {
            return;
        }
        let mut factors = factors;
        factors.sort();
        self.terms.push(DiffTerm {
            coefficient,
            factors,
            fock,
            derivations,
        });
    }

    pub fn fock(op: &Arc<FockOperator>) -> Self {
        let mut out = Self::new();
        out.push(
            Complex64::new(1.0, 0.0),
            Vec::new(),
            Some(Arc::clone(op)),
            Vec::new(),
        );
        out
    }

    pub fn scalar(value: Complex64) -> Self {
        let mut out = Self::new();
        out.push(value, Vec::new(), None, Vec::new());
        out
    }

    pub fn function(atom: Atom) -> Self {
        let mut out = Self::new();
        out.push(Complex64::new(1.0, 0.0), vec![atom], None, Vec::new());
        out
    }

    pub fn derivation(direction: Mode) -> Self {
        let mut out = Self::new();
        out.push(Complex64::new(1.0, 0.0), Vec::new(), None, vec![direction]);
        out
    }

    pub fn add_scaled(&mut self, factor: Complex64, other: &DiffOp) {
        for t in &other.terms {
            self.push(
                factor * t.coefficient,
                t.factors.clone(),
                t.fock.clone(),
                t.derivations.clone(),
            );
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = Self::new();
        out.add_scaled(factor, self);
        out
    }

    /// `self` followed by multiplication with a monomial on the left.
    pub fn times_monomial(&self, mono: &Monomial) -> Self {
        let mut out = Self::new();
        for t in &self.terms {
            out.push(
                t.coefficient,
                product(mono, &t.factors),
                t.fock.clone(),
                t.derivations.clone(),
            );
        }
        out
    }

    /// Composition `self o mono`: derivations of each term fall on the monomial by the
    /// product rule, split over every order-preserving subsequence of the word.
    pub fn compose_function(&self, mono: &Monomial) -> Self {
        let mut out = Self::new();
        for t in &self.terms {
            let k = t.derivations.len();
            for mask in 0..1usize << k {
                let picked = |want: bool| -> Vec<Mode> {
                    t.derivations
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| (mask >> i & 1 == 1) == want)
                        .map(|(_, m)| *m)
                        .collect()
                };
                let (hit, rest) = (picked(true), picked(false));
                let derived = if hit.is_empty() {
                    vec![mono.clone()]
                } else {
                    differentiate(mono, &hit)
                };
                for d in derived {
                    out.push(
                        t.coefficient,
                        product(&t.factors, &d),
                        t.fock.clone(),
                        rest.clone(),
                    );
                }
            }
        }
        out
    }

    /// Applies the operator and evaluates the result at once, keeping only `rows`;
    /// `value` returns the number a monomial takes at the fixed `B`.
    pub fn apply_evaluated<E>(
        &self,
        state: &FieldState,
        rows: &[usize],
        mut value: impl FnMut(&Monomial) -> Result<Complex64, E>,
    ) -> Result<CMat, E> {
        let mut out = CMat::zeros(rows.len(), state.width);
        for t in &self.terms {
            for (mono, block) in &state.parts {
                let derived = differentiate(mono, &t.derivations);
                if derived.is_empty() {
                    continue;
                }
                let mut weight = Complex64::default();
                for d in derived {
                    weight += value(&product(&t.factors, &d))?;
                }
                if weight == Complex64::default() {
                    continue;
                }
                let moved = match &t.fock {
                    Some(m) => m.apply_rows(block, rows),
                    None => block.select_rows(rows),
                };
                out += moved * (weight * t.coefficient);
            }
        }
        Ok(out)
    }

    /// Applies the operator to a state.
    pub fn apply(&self, state: &FieldState) -> FieldState {
        let mut out = FieldState::empty(state.dim, state.width);
        for t in &self.terms {
            for (mono, block) in &state.parts {
                let derived = differentiate(mono, &t.derivations);
                if derived.is_empty() {
                    continue;
                }
                let moved = match &t.fock {
                    Some(m) => m.apply(block),
                    None => block.clone(),
                };
                for d in derived {
                    out.accumulate(product(&t.factors, &d), &moved, t.coefficient);
                }
            }
        }
        out
    }
}

/// `sum_mu mu(B) v_mu` with each `v_mu` a block of Fock column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    dim: usize,
    width: usize,
    parts: BTreeMap<Monomial, CMat>,
}

impl FieldState {
    pub fn empty(dim: usize, width: usize) -> Self {
        Self {
            dim,
            width,
            parts: BTreeMap::new(),
        }
    }

    /// `f(B)` times the given Fock columns.
    pub fn probe(function: Option<FieldFunction>, dim: usize, columns: &[usize]) -> Self {
        let mut block = CMat::zeros(dim, columns.len());
        for (j, &c) in columns.iter().enumerate() {
            block[(c, j)] = Complex64::new(1.0, 0.0);
        }
        let mono = function.map(|f| vec![Atom::plain(f)]).unwrap_or_default();
        Self {
            dim,
            width: columns.len(),
            parts: BTreeMap::from([(mono, block)]),
        }
    }

    pub fn parts(&self) -> &BTreeMap<Monomial, CMat> {
        &self.parts
    }

    pub fn accumulate(&mut self, mono: Monomial, block: &CMat, factor: Complex64) {
        match self.parts.get_mut(&mono) {
            Some(acc) => *acc += block * factor,
            None => {
                self.parts.insert(mono, block * factor);
            }
        }
    }

    pub fn add_scaled(&mut self, factor: Complex64, other: &FieldState) {
        for (mono, block) in &other.parts {
            self.accumulate(mono.clone(), block, factor);
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.parts.keys().flatten()
    }

    /// `sum_mu value(mu) v_mu` on the given rows.
    pub fn evaluate<E>(
        &self,
        rows: &[usize],
        mut value: impl FnMut(&Monomial) -> Result<Complex64, E>,
    ) -> Result<CMat, E> {
        let mut out = CMat::zeros(rows.len(), self.width);
        for (mono, block) in &self.parts {
            out += block.select_rows(rows) * value(mono)?;
        }
        Ok(out)
    }
}
