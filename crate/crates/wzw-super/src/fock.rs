use fourier_core::Complex64;

use crate::operator::FockOperator;
use crate::structure::StructureConstants;
use crate::{Result, WzwError};

/// Default ceiling on the Fock dimension, `2^20`.
pub const DEFAULT_CAPACITY_LOG2: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BosonicRealization {
    /// `T = 0`, level zero.
    TrivialK0,
    /// `T` built from a second, independent fermion family; level `h_dual`.
    SecondFermion,
}

/// A fermion mode `psi^color_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub color: usize,
    pub index: i64,
}

impl Mode {
    pub fn new(color: usize, index: i64) -> Self {
        Self { color, index }
    }
}

/// Ordered bilinear `sign * psi(left) psi(right)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedPair {
    pub sign: f64,
    pub left: Mode,
    pub right: Mode,
}

/// Moves a positive-index factor to the left of a negative-index one. Pairs that
/// involve a zero mode are left as written.
pub fn normal_order_pair(first: Mode, second: Mode) -> OrderedPair {
    if first.index < 0 && second.index > 0 {
        OrderedPair {
            sign: -1.0,
            left: second,
            right: first,
        }
    } else {
        OrderedPair {
            sign: 1.0,
            left: first,
            right: second,
        }
    }
}

/// One CAR family: operators `psi^a_n` for `|n| <= cutoff` and the level of each basis state.
#[derive(Debug, Clone)]
struct Family {
    psi: Vec<FockOperator>,
    levels: Vec<usize>,
}

fn parity(bits: usize) -> f64 {
    if bits.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Zero-mode Clifford generator `gamma_a` on `floor(N/2)` qubits: Jordan-Wigner `X` and `Y`
/// per qubit, and for odd `N` the total parity as the last generator. Returns
/// `(target, coefficient)` for a basis state `z`.
fn clifford_action(a: usize, n_colors: usize, z: usize) -> (usize, Complex64) {
    let qubits = n_colors / 2;
    if a == 2 * qubits {
        return (z, Complex64::new(parity(z), 0.0));
    }
    let j = a / 2;
    let string = parity(z & ((1 << j) - 1));
    let occupied = z >> j & 1 == 1;
    let value = if a.is_multiple_of(2) {
        Complex64::new(string, 0.0)
    } else if occupied {
        Complex64::new(0.0, -string)
    } else {
        Complex64::new(0.0, string)
    };
    (z ^ (1 << j), value)
}

impl Family {
    fn build(n_colors: usize, cutoff: usize) -> Self {
        let modes = n_colors * cutoff;
        let zero_dim = 1usize << (n_colors / 2);
        let occ_dim = 1usize << modes;
        let dim = zero_dim * occ_dim;
        let root2 = std::f64::consts::SQRT_2;
        let levels = (0..dim)
            .map(|s| {
                let occ = s & (occ_dim - 1);
                (0..modes)
                    .filter(|j| occ >> j & 1 == 1)
                    .map(|j| j / n_colors + 1)
                    .sum()
            })
            .collect();
        let mut psi = Vec::with_capacity((2 * cutoff + 1) * n_colors);
        for n in -(cutoff as i64)..=cutoff as i64 {
            for a in 0..n_colors {
                let op = if n == 0 {
                    FockOperator::from_triplets(
                        dim,
                        (0..dim).map(|s| {
                            let (occ, z) = (s & (occ_dim - 1), s >> modes);
                            let (z2, v) = clifford_action(a, n_colors, z);
                            ((z2 << modes) | occ, s, v * parity(occ))
                        }),
                    )
                } else {
                    let j = (n.unsigned_abs() as usize - 1) * n_colors + a;
                    let create = n > 0;
                    FockOperator::from_triplets(
                        dim,
                        (0..dim).filter_map(|s| {
                            let occupied = s >> j & 1 == 1;
                            if occupied == create {
                                return None;
                            }
                            let sign = parity(s & ((1 << j) - 1));
                            Some((s ^ (1 << j), s, Complex64::new(root2 * sign, 0.0)))
                        }),
                    )
                };
                psi.push(op);
            }
        }
        Self { psi, levels }
    }

    fn dim(&self) -> usize {
        self.levels.len()
    }
}

/// Truncated fermionic Fock space with modes `|n| <= cutoff`, optionally tensored with
/// a second family carrying the bosonic current.
#[derive(Debug, Clone)]
pub struct FockSpace {
    sc: StructureConstants,
    cutoff: usize,
    realization: BosonicRealization,
    psi: Vec<FockOperator>,
    boson_psi: Vec<FockOperator>,
    levels: Vec<usize>,
}

/// `log2` of the dimension of one fermion family.
pub fn family_log2(n_colors: usize, cutoff: usize) -> usize {
    n_colors * cutoff + n_colors / 2
}

pub fn build_fock(
    sc: &StructureConstants,
    cutoff: usize,
    realization: BosonicRealization,
) -> Result<FockSpace> {
    build_fock_with_capacity(sc, cutoff, realization, DEFAULT_CAPACITY_LOG2)
}

pub fn build_fock_with_capacity(
    sc: &StructureConstants,
    cutoff: usize,
    realization: BosonicRealization,
    cap_log2: usize,
) -> Result<FockSpace> {
    if cutoff == 0 {
        return Err(WzwError::EmptyCutoff);
    }
    let single = family_log2(sc.dim(), cutoff);
    let log2 = match realization {
        BosonicRealization::TrivialK0 => single,
        BosonicRealization::SecondFermion => 2 * single,
    };
    if log2 > cap_log2 {
        return Err(WzwError::CapacityExceeded { log2, cap_log2 });
    }
    let family = Family::build(sc.dim(), cutoff);
    let (psi, boson_psi, levels) = match realization {
        BosonicRealization::TrivialK0 => (family.psi, Vec::new(), family.levels),
        BosonicRealization::SecondFermion => {
            let id = FockOperator::identity(family.dim());
            let psi = family.psi.iter().map(|p| id.kron(p)).collect();
            let boson = family.psi.iter().map(|p| p.kron(&id)).collect();
            let levels = family
                .levels
                .iter()
                .flat_map(|lb| family.levels.iter().map(move |lf| lb + lf))
                .collect();
            (psi, boson, levels)
        }
    };
    Ok(FockSpace {
        sc: sc.clone(),
        cutoff,
        realization,
        psi,
        boson_psi,
        levels,
    })
}

impl FockSpace {
    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn colors(&self) -> usize {
        self.sc.dim()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn realization(&self) -> BosonicRealization {
        self.realization
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    /// Basis index of `|Omega_0>`, a vector of the degenerate vacuum space.
    pub fn vacuum(&self) -> usize {
        0
    }

    /// Excitation level `sum n` over occupied modes, both families included.
    pub fn level(&self, state: usize) -> usize {
        self.levels[state]
    }

    pub fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        let n = self.cutoff as i64;
        (-n..=n).flat_map(move |i| (0..self.colors()).map(move |a| Mode::new(a, i)))
    }

    fn slot(&self, mode: Mode) -> Result<usize> {
        if mode.color >= self.colors() {
            return Err(WzwError::ColorOutOfRange {
                color: mode.color,
                dim: self.colors(),
            });
        }
        if mode.index.unsigned_abs() as usize > self.cutoff {
            return Err(WzwError::ModeOutOfRange {
                mode: mode.index,
                cutoff: self.cutoff,
            });
        }
        Ok((mode.index + self.cutoff as i64) as usize * self.colors() + mode.color)
    }

    pub fn contains(&self, index: i64) -> bool {
        index.unsigned_abs() as usize <= self.cutoff
    }

    pub fn psi(&self, mode: Mode) -> Result<&FockOperator> {
        Ok(&self.psi[self.slot(mode)?])
    }

    /// Fermion of the second family, present only in the second-fermion realization.
    pub fn boson_psi(&self, mode: Mode) -> Result<&FockOperator> {
        if self.realization != BosonicRealization::SecondFermion {
            return Err(WzwError::WrongRealization("second-fermion"));
        }
        Ok(&self.boson_psi[self.slot(mode)?])
    }

    /// `:psi(first) psi(second):`.
    pub fn normal_ordered(&self, first: Mode, second: Mode) -> Result<FockOperator> {
        let pair = normal_order_pair(first, second);
        let product = self.psi(pair.left)?.mul(self.psi(pair.right)?);
        Ok(product.scale(Complex64::new(pair.sign, 0.0)))
    }

    /// Flags basis states of excitation level at most `level`.
    pub fn safe_mask(&self, level: usize) -> Vec<bool> {
        self.levels.iter().map(|&l| l <= level).collect()
    }

    pub fn safe_states(&self, level: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&s| self.levels[s] <= level)
            .collect()
    }

    /// Refuses an identity whose modes span `span` when checked on states of level
    /// at most `level`; truncated bilinears are exact there once `cutoff >= level + span + 1`.
    pub fn check_budget(&self, span: usize, level: usize) -> Result<()> {
        let required = level + span + 1;
        if self.cutoff < required {
            return Err(WzwError::BudgetExceeded {
                span,
                level,
                required,
                cutoff: self.cutoff,
            });
        }
        Ok(())
    }
}
