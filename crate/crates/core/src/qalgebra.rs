//! q-deformed SU(2) representation theory at level `k`.
//!
//! All spins are carried as doubled integers ([`DoubledSpin`]): label `1` is
//! spin 1/2, label `2` is spin 1. Formulas that need true spins halve at
//! evaluation time, and only ever after checking that the halved quantity is
//! integral.
//!
//! The deformation parameter is `q = exp(2πi / (k + 2))`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::RwLock;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QAlgebraError {
    #[error("level k = {0} is not supported (need k >= 1)")]
    Level(u32),
    #[error("q-factorial argument {n} out of range for level {k} (max {max})", max = k + 1)]
    FactorialRange { n: i64, k: u32 },
    #[error("labels ({0}, {1}, {2}) are not an admissible fusion triple at level {3}")]
    Inadmissible(DoubledSpin, DoubledSpin, DoubledSpin, u32),
}

/// Twice the topological spin of an anyon label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubledSpin(pub u32);

impl DoubledSpin {
    pub const VACUUM: DoubledSpin = DoubledSpin(0);

    pub fn value(self) -> u32 {
        self.0
    }

    fn i(self) -> i64 {
        i64::from(self.0)
    }
}

impl fmt::Display for DoubledSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for DoubledSpin {
    fn from(v: u32) -> Self {
        DoubledSpin(v)
    }
}

/// Exponent of `q` held exactly in quarter units: the value represented is
/// `q^(quarters / 4) = exp(2πi · quarters / (4(k + 2)))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QExponent {
    pub quarters: i64,
}

impl QExponent {
    pub fn phase(self, k: u32) -> Complex64 {
        // Reduce modulo one full turn before going to floating point.
        let period = 4 * (i64::from(k) + 2);
        let reduced = self.quarters.rem_euclid(period);
        Complex64::from_polar(1.0, 2.0 * PI * reduced as f64 / period as f64)
    }
}

/// `[n]_q = sin(nπ/(k+2)) / sin(π/(k+2))`.
pub fn q_integer(n: u32, k: u32) -> f64 {
    let h = PI / f64::from(k + 2);
    (f64::from(n) * h).sin() / h.sin()
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q` for `0 <= n <= k + 1`.
pub fn q_factorial(n: i64, k: u32) -> Result<f64, QAlgebraError> {
    if n < 0 || n > i64::from(k) + 1 {
        return Err(QAlgebraError::FactorialRange { n, k });
    }
    Ok((1..=n as u32).map(|m| q_integer(m, k)).product())
}

/// Truncated SU(2)_k fusion rule: `|j1 - j2| <= j3 <= min(j1 + j2, 2k - j1 - j2)`
/// in doubled units, with `j1 + j2 + j3` even.
pub fn is_admissible(j1: DoubledSpin, j2: DoubledSpin, j3: DoubledSpin, k: u32) -> bool {
    let (a, b, c, k) = (j1.i(), j2.i(), j3.i(), i64::from(k));
    if a > k || b > k || c > k {
        return false;
    }
    (a - b).abs() <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0
}

/// Fusion channels of `a ⊗ b` in increasing order.
pub fn fusion_channels(a: DoubledSpin, b: DoubledSpin, k: u32) -> Vec<DoubledSpin> {
    (0..=k)
        .map(DoubledSpin)
        .filter(|&c| is_admissible(a, b, c, k))
        .collect()
}

fn check_triple(
    j1: DoubledSpin,
    j2: DoubledSpin,
    j3: DoubledSpin,
    k: u32,
) -> Result<(), QAlgebraError> {
    if is_admissible(j1, j2, j3, k) {
        Ok(())
    } else {
        Err(QAlgebraError::Inadmissible(j1, j2, j3, k))
    }
}

/// Triangle coefficient `Δ(j1, j2, j3)`.
pub fn triangle_delta(
    j1: DoubledSpin,
    j2: DoubledSpin,
    j3: DoubledSpin,
    k: u32,
) -> Result<f64, QAlgebraError> {
    check_triple(j1, j2, j3, k)?;
    let (a, b, c) = (j1.i(), j2.i(), j3.i());
    let num = q_factorial((-a + b + c) / 2, k)?
        * q_factorial((a - b + c) / 2, k)?
        * q_factorial((a + b - c) / 2, k)?;
    let den = q_factorial((a + b + c) / 2 + 1, k)?;
    Ok((num / den).sqrt())
}

/// Quantum 6j symbol `{j1 j2 j12; j3 j j23}_q`. Returns 0 when any of the
/// four triangles is inadmissible.
pub fn q_six_j(
    j1: DoubledSpin,
    j2: DoubledSpin,
    j12: DoubledSpin,
    j3: DoubledSpin,
    j: DoubledSpin,
    j23: DoubledSpin,
    k: u32,
) -> f64 {
    let triangles = [(j1, j2, j12), (j12, j3, j), (j2, j3, j23), (j1, j23, j)];
    if !triangles.iter().all(|&(a, b, c)| is_admissible(a, b, c, k)) {
        return 0.0;
    }
    let prefactor: f64 = triangles
        .iter()
        .map(|&(a, b, c)| triangle_delta(a, b, c, k).expect("admissible"))
        .product();

    // Admissible triangles have even doubled sums, so every bound is integral.
    let lower = triangles.map(|(a, b, c)| (a.i() + b.i() + c.i()) / 2);
    let upper = [
        (j1.i() + j2.i() + j3.i() + j.i()) / 2,
        (j1.i() + j12.i() + j3.i() + j23.i()) / 2,
        (j2.i() + j12.i() + j.i() + j23.i()) / 2,
    ];
    let z_min = *lower.iter().max().expect("non-empty");
    let z_max = *upper.iter().min().expect("non-empty");

    let mut sum = 0.0;
    for z in z_min..=z_max {
        let term = (|| -> Result<f64, QAlgebraError> {
            let mut den = 1.0;
            for l in lower {
                den *= q_factorial(z - l, k)?;
            }
            for u in upper {
                den *= q_factorial(u - z, k)?;
            }
            Ok(q_factorial(z + 1, k)? / den)
        })();
        // [z+1]_q! past k+1 contains the vanishing factor [k+2]_q.
        let term = match term {
            Ok(t) => t,
            Err(QAlgebraError::FactorialRange { n, .. }) if n == z + 1 => 0.0,
            Err(e) => panic!("z-range guard violated: {e}"),
        };
        let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * term;
    }
    prefactor * sum
}

/// R-symbol `R^{j1 j2}_j = (-1)^{j - j1 - j2} q^{(j(j+1) - j1(j1+1) - j2(j2+1))/2}`.
pub fn r_symbol(
    j1: DoubledSpin,
    j2: DoubledSpin,
    j: DoubledSpin,
    k: u32,
) -> Result<Complex64, QAlgebraError> {
    check_triple(j1, j2, j, k)?;
    let (a, b, c) = (j1.i(), j2.i(), j.i());
    let sign = if ((c - a - b) / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    // j(j+1) in true spins is d(d+2)/4 for doubled d; the exponent
    // (1/2)(...)/4 is an integer number of quarters once halved.
    let e = c * (c + 2) - a * (a + 2) - b * (b + 2);
    debug_assert!(e % 2 == 0);
    let phase = QExponent { quarters: e / 2 }.phase(k);
    Ok(phase * sign)
}

/// F-symbol `[F^{j1 j2 j3}_j]_{j12, j23}`. Returns 0 for inadmissible labels.
pub fn f_symbol(
    j1: DoubledSpin,
    j2: DoubledSpin,
    j3: DoubledSpin,
    j: DoubledSpin,
    j12: DoubledSpin,
    j23: DoubledSpin,
    k: u32,
) -> f64 {
    let six_j = q_six_j(j1, j2, j12, j3, j, j23, k);
    if six_j == 0.0 {
        return 0.0;
    }
    let sign = if ((j1.i() + j2.i() + j3.i() + j.i()) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    sign * (q_integer(j12.0 + 1, k) * q_integer(j23.0 + 1, k)).sqrt() * six_j
}

type FKey = [u32; 6];
type RKey = [u32; 3];

/// Per-level cache of q-integers, F-symbols and R-symbols.
///
/// Safe for concurrent use; a cached value is the value `f_symbol` /
/// `r_symbol` returned the first time it was requested.
#[derive(Debug)]
pub struct SymbolTable {
    level: u32,
    q_integers: Vec<f64>,
    f_cache: RwLock<HashMap<FKey, f64>>,
    r_cache: RwLock<HashMap<RKey, Complex64>>,
}

impl SymbolTable {
    pub fn new(level: u32) -> Result<Self, QAlgebraError> {
        if level < 1 {
            return Err(QAlgebraError::Level(level));
        }
        Ok(SymbolTable {
            level,
            q_integers: (0..=level + 2).map(|n| q_integer(n, level)).collect(),
            f_cache: RwLock::new(HashMap::new()),
            r_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn q_integer(&self, n: u32) -> f64 {
        match self.q_integers.get(n as usize) {
            Some(&v) => v,
            None => q_integer(n, self.level),
        }
    }

    pub fn f(
        &self,
        j1: DoubledSpin,
        j2: DoubledSpin,
        j3: DoubledSpin,
        j: DoubledSpin,
        j12: DoubledSpin,
        j23: DoubledSpin,
    ) -> f64 {
        let key = [j1.0, j2.0, j3.0, j.0, j12.0, j23.0];
        if let Some(&v) = self.f_cache.read().expect("poisoned").get(&key) {
            return v;
        }
        let v = f_symbol(j1, j2, j3, j, j12, j23, self.level);
        *self
            .f_cache
            .write()
            .expect("poisoned")
            .entry(key)
            .or_insert(v)
    }

    pub fn r(
        &self,
        j1: DoubledSpin,
        j2: DoubledSpin,
        j: DoubledSpin,
    ) -> Result<Complex64, QAlgebraError> {
        let key = [j1.0, j2.0, j.0];
        if let Some(&v) = self.r_cache.read().expect("poisoned").get(&key) {
            return Ok(v);
        }
        let v = r_symbol(j1, j2, j, self.level)?;
        Ok(*self
            .r_cache
            .write()
            .expect("poisoned")
            .entry(key)
            .or_insert(v))
    }

    pub fn fusion_channels(&self, a: DoubledSpin, b: DoubledSpin) -> Vec<DoubledSpin> {
        fusion_channels(a, b, self.level)
    }

    /// The F-matrix for fixed `(j1, j2, j3; j)`, rows indexed by the
    /// admissible `j12`, columns by the admissible `j23`.
    pub fn f_matrix(
        &self,
        j1: DoubledSpin,
        j2: DoubledSpin,
        j3: DoubledSpin,
        j: DoubledSpin,
    ) -> FMatrix {
        let rows: Vec<_> = self
            .fusion_channels(j1, j2)
            .into_iter()
            .filter(|&a| is_admissible(a, j3, j, self.level))
            .collect();
        let cols: Vec<_> = self
            .fusion_channels(j2, j3)
            .into_iter()
            .filter(|&b| is_admissible(j1, b, j, self.level))
            .collect();
        let entries = rows
            .iter()
            .map(|&a| cols.iter().map(|&b| self.f(j1, j2, j3, j, a, b)).collect())
            .collect();
        FMatrix {
            rows,
            cols,
            entries,
        }
    }
}

/// A dense F-matrix together with its channel labels.
#[derive(Debug, Clone, PartialEq)]
pub struct FMatrix {
    pub rows: Vec<DoubledSpin>,
    pub cols: Vec<DoubledSpin>,
    pub entries: Vec<Vec<f64>>,
}

impl FMatrix {
    pub fn get(&self, row: DoubledSpin, col: DoubledSpin) -> f64 {
        let r = self.rows.iter().position(|&x| x == row);
        let c = self.cols.iter().position(|&x| x == col);
        match (r, c) {
            (Some(r), Some(c)) => self.entries[r][c],
            _ => 0.0,
        }
    }
}
