use fourier_core::{Complex64, LoopElement};

use crate::fock::{BosonicRealization, FockSpace, Mode};
use crate::operator::FockOperator;
use crate::{Result, WzwError};

const REALITY_TOL: f64 = 1e-12;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `-(1/4) lambda^{abc} sum_m :psi^b_{n-m} psi^c_m:` built from the given family of fermions,
/// the sum truncated to representable modes.
fn bilinear_current(
    fock: &FockSpace,
    a: usize,
    n: i64,
    psi: impl Fn(Mode) -> Result<FockOperator>,
) -> Result<FockOperator> {
    let sc = fock.structure();
    let cutoff = fock.cutoff() as i64;
    let mut out = FockOperator::zero(fock.dim());
    for (a2, b, c, value) in sc.nonzero() {
        if a2 != a {
            continue;
        }
        for m in -cutoff..=cutoff {
            if !fock.contains(n - m) {
                continue;
            }
            // b != c, so the two factors anticommute and ordering them changes nothing
            let term = psi(Mode::new(b, n - m))?.mul(&psi(Mode::new(c, m))?);
            out = out.add(&term.scale(re(-0.25 * value)));
        }
    }
    Ok(out)
}

pub fn k_current(fock: &FockSpace, a: usize, n: i64) -> Result<FockOperator> {
    check_mode(fock, Mode::new(a, n))?;
    bilinear_current(fock, a, n, |m| fock.psi(m).cloned())
}

/// `T^a_n`: zero at level 0, or the current of the second fermion family at level `h_dual`.
pub fn bosonic_current(fock: &FockSpace, a: usize, n: i64) -> Result<FockOperator> {
    check_mode(fock, Mode::new(a, n))?;
    match fock.realization() {
        BosonicRealization::TrivialK0 => Ok(FockOperator::zero(fock.dim())),
        BosonicRealization::SecondFermion => {
            bilinear_current(fock, a, n, |m| fock.boson_psi(m).cloned())
        }
    }
}

fn check_mode(fock: &FockSpace, mode: Mode) -> Result<()> {
    if mode.color >= fock.colors() {
        return Err(WzwError::ColorOutOfRange {
            color: mode.color,
            dim: fock.colors(),
        });
    }
    if !fock.contains(mode.index) {
        return Err(WzwError::ModeOutOfRange {
            mode: mode.index,
            cutoff: fock.cutoff(),
        });
    }
    Ok(())
}

/// `K`, `T` and `S = T + K` for every mode of the space, built once.
#[derive(Debug, Clone)]
pub struct Currents {
    cutoff: usize,
    colors: usize,
    k: Vec<FockOperator>,
    t: Vec<FockOperator>,
    s: Vec<FockOperator>,
}

impl Currents {
    pub fn build(fock: &FockSpace) -> Result<Self> {
        let (mut k, mut t, mut s) = (Vec::new(), Vec::new(), Vec::new());
        for mode in fock.modes() {
            let kk = k_current(fock, mode.color, mode.index)?;
            let tt = bosonic_current(fock, mode.color, mode.index)?;
            s.push(tt.add(&kk));
            k.push(kk);
            t.push(tt);
        }
        Ok(Self {
            cutoff: fock.cutoff(),
            colors: fock.colors(),
            k,
            t,
            s,
        })
    }

    fn slot(&self, mode: Mode) -> Result<usize> {
        if mode.index.unsigned_abs() as usize > self.cutoff {
            return Err(WzwError::ModeOutOfRange {
                mode: mode.index,
                cutoff: self.cutoff,
            });
        }
        if mode.color >= self.colors {
            return Err(WzwError::ColorOutOfRange {
                color: mode.color,
                dim: self.colors,
            });
        }
        Ok((mode.index + self.cutoff as i64) as usize * self.colors + mode.color)
    }

    pub fn k(&self, mode: Mode) -> Result<&FockOperator> {
        Ok(&self.k[self.slot(mode)?])
    }

    pub fn t(&self, mode: Mode) -> Result<&FockOperator> {
        Ok(&self.t[self.slot(mode)?])
    }

    pub fn s(&self, mode: Mode) -> Result<&FockOperator> {
        Ok(&self.s[self.slot(mode)?])
    }
}

/// Fourier components `A^a_n` of a gauge potential, one scalar loop per color, each
/// satisfying `(A^a_n)^* = -A^a_{-n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugePotential {
    components: Vec<LoopElement>,
}

impl GaugePotential {
    pub fn new(components: Vec<LoopElement>) -> Result<Self> {
        for (color, c) in components.iter().enumerate() {
            if c.fiber() != 1 {
                return Err(WzwError::PotentialShape {
                    expected: 1,
                    found: c.fiber(),
                });
            }
            if let Some((_, defect)) = c.antihermitian_defect().filter(|(_, d)| *d > REALITY_TOL) {
                return Err(WzwError::PotentialNotReal { color, defect });
            }
        }
        Ok(Self { components })
    }

    pub fn zero(colors: usize) -> Self {
        Self {
            components: (0..colors).map(|_| LoopElement::zero(1)).collect(),
        }
    }

    pub fn colors(&self) -> usize {
        self.components.len()
    }

    pub fn bandwidth(&self) -> usize {
        self.components
            .iter()
            .map(LoopElement::bandwidth)
            .max()
            .unwrap_or(0)
    }

    pub fn component(&self, color: usize, mode: i64) -> Complex64 {
        self.components[color]
            .coeff(mode)
            .map(|m| m[(0, 0)])
            .unwrap_or_default()
    }
}

/// Level data of the bosonic sector plus an optional gauge potential.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingData {
    pub level: f64,
    pub k_bar: f64,
    pub potential: Option<GaugePotential>,
}

impl CouplingData {
    /// Level 0 for the trivial realization, `h_dual` for the second fermion family.
    pub fn for_space(fock: &FockSpace) -> Self {
        let h_dual = fock.structure().h_dual();
        let level = match fock.realization() {
            BosonicRealization::TrivialK0 => 0.0,
            BosonicRealization::SecondFermion => h_dual,
        };
        Self {
            level,
            k_bar: (level + h_dual) / 4.0,
            potential: None,
        }
    }

    pub fn with_potential(mut self, potential: GaugePotential) -> Self {
        self.potential = Some(potential);
        self
    }
}

/// `Q = i sum psi^a_n (T^a_{-n} + (1/3) K^a_{-n})` over all modes of the space.
pub fn supercharge(fock: &FockSpace, currents: &Currents) -> Result<FockOperator> {
    let mut q = FockOperator::zero(fock.dim());
    for mode in fock.modes() {
        let dual = Mode::new(mode.color, -mode.index);
        let inner = currents
            .t(dual)?
            .add(&currents.k(dual)?.scale(re(1.0 / 3.0)));
        q = q.add(&fock.psi(mode)?.mul(&inner).scale(I));
    }
    Ok(q)
}

/// `h = -sum :T^a_n T^a_{-n}: + k_bar sum_{n>0} n psi^a_n psi^a_{-n} + N/24`.
pub fn hamiltonian(
    fock: &FockSpace,
    currents: &Currents,
    coupling: &CouplingData,
) -> Result<FockOperator> {
    let dim = fock.dim();
    let mut h = FockOperator::identity(dim).scale(re(fock.colors() as f64 / 24.0));
    if fock.realization() == BosonicRealization::SecondFermion {
        for mode in fock.modes() {
            let (left, right) = if mode.index < 0 {
                (Mode::new(mode.color, -mode.index), mode)
            } else {
                (mode, Mode::new(mode.color, -mode.index))
            };
            h = h.sub(&currents.t(left)?.mul(currents.t(right)?));
        }
    }
    for mode in fock.modes().filter(|m| m.index > 0) {
        let pair = fock
            .psi(mode)?
            .mul(fock.psi(Mode::new(mode.color, -mode.index))?);
        h = h.add(&pair.scale(re(coupling.k_bar * mode.index as f64)));
    }
    Ok(h)
}

fn potential<'a>(coupling: &'a CouplingData, fock: &FockSpace) -> Result<&'a GaugePotential> {
    let a = coupling
        .potential
        .as_ref()
        .ok_or(WzwError::PotentialShape {
            expected: fock.colors(),
            found: 0,
        })?;
    if a.colors() != fock.colors() {
        return Err(WzwError::PotentialShape {
            expected: fock.colors(),
            found: a.colors(),
        });
    }
    if a.bandwidth() > fock.cutoff() {
        return Err(WzwError::ModeOutOfRange {
            mode: a.bandwidth() as i64,
            cutoff: fock.cutoff(),
        });
    }
    Ok(a)
}

/// `Q(A) = Q + i k_bar psi^a_n A^a_{-n}`.
pub fn coupled_supercharge(
    fock: &FockSpace,
    currents: &Currents,
    coupling: &CouplingData,
) -> Result<FockOperator> {
    let a = potential(coupling, fock)?;
    let mut q = supercharge(fock, currents)?;
    for mode in fock.modes() {
        let value = a.component(mode.color, -mode.index);
        if value != Complex64::default() {
            q = q.add(&fock.psi(mode)?.scale(I * coupling.k_bar * value));
        }
    }
    Ok(q)
}

/// `h(A) = h - k_bar (2 S^a_n A^a_{-n} + k_bar A^a_n A^a_{-n})`.
pub fn coupled_hamiltonian(
    fock: &FockSpace,
    currents: &Currents,
    coupling: &CouplingData,
) -> Result<FockOperator> {
    let a = potential(coupling, fock)?;
    let mut h = hamiltonian(fock, currents, coupling)?;
    let mut constant = Complex64::default();
    for mode in fock.modes() {
        let value = a.component(mode.color, -mode.index);
        if value == Complex64::default() {
            continue;
        }
        h = h.sub(&currents.s(mode)?.scale(value * 2.0 * coupling.k_bar));
        constant += a.component(mode.color, mode.index) * value;
    }
    Ok(
        h.sub(
            &FockOperator::identity(fock.dim()).scale(constant * coupling.k_bar * coupling.k_bar),
        ),
    )
}

/// Right side of the equivariance identity,
/// `i k_bar (n psi^a_n + lambda^{abc} psi^c_{n+m} A^b_{-m})`.
pub fn equivariance_rhs(
    fock: &FockSpace,
    coupling: &CouplingData,
    mode: Mode,
) -> Result<FockOperator> {
    let a = potential(coupling, fock)?;
    let mut out = fock.psi(mode)?.scale(re(mode.index as f64));
    let cutoff = fock.cutoff() as i64;
    for (a2, b, c, value) in fock.structure().nonzero() {
        if a2 != mode.color {
            continue;
        }
        for m in -cutoff..=cutoff {
            let target = mode.index + m;
            let amp = a.component(b, -m);
            if amp == Complex64::default() || !fock.contains(target) {
                continue;
            }
            out = out.add(&fock.psi(Mode::new(c, target))?.scale(amp * value));
        }
    }
    Ok(out.scale(I * coupling.k_bar))
}
