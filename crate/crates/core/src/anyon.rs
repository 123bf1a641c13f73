//! Elementary braiding matrices (EBMs) for SU(2)_k anyons.
//!
//! One qubit is three anyons of label `s`, with the state given by the
//! fusion channel `a ∈ {0, 2}` of the first pair. Basis order is
//! `{|1⟩, |X⟩} = {|0⟩_L, |1⟩_L}`.
//!
//! Two qubits are six anyons with total charge 0. The first triple fuses as
//! `((s s)_a s)_c`, the second as `(s (s s)_b)_c`. The 5-dimensional space is
//! ordered
//!
//! | index | (a, b, c)   | meaning            |
//! |-------|-------------|--------------------|
//! | 0     | (2, 2, nc)  | non-computational  |
//! | 1     | (0, 0, s)   | `|00⟩_L`           |
//! | 2     | (0, 2, s)   | `|01⟩_L`           |
//! | 3     | (2, 0, s)   | `|10⟩_L`           |
//! | 4     | (2, 2, s)   | `|11⟩_L`           |
//!
//! where `nc` is the other channel of `2 ⊗ s`.
//!
//! A braidword is evaluated with its leftmost letter applied first: the word
//! `w1 w2 … wn` is the matrix `σ_{wn} ⋯ σ_{w2} σ_{w1}`.

use std::fmt;
use std::str::FromStr;

use nalgebra::SMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::qalgebra::{fusion_channels, DoubledSpin, QAlgebraError, SymbolTable};

pub type Mat<const D: usize> = SMatrix<Complex64, D, D>;
pub type Mat2 = Mat<2>;
pub type Mat4 = Mat<4>;
pub type Mat5 = Mat<5>;

pub const ONE_QUBIT_BASIS: [&str; 2] = ["|1>", "|X1>"];
pub const TWO_QUBIT_BASIS: [&str; 5] = ["NC", "|11>", "|1X1>", "|X11>", "|X1X1>"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnyonError {
    #[error("level k = {0} is not supported (need k >= 3)")]
    Level(u32),
    #[error("label {label} cannot encode a qubit at level {level} (need 1 or k-1)")]
    QubitLabel { label: u32, level: u32 },
    #[error("letter '{0}' is not in the alphabet")]
    BadLetter(char),
    #[error("word uses {word} generators but the generator set has {set}")]
    AlphabetMismatch { word: usize, set: usize },
    #[error("generator index {index} out of range for {n} generators")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Symbols(#[from] QAlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Encoding {
    OneQubit,
    TwoQubit,
}

impl Encoding {
    pub fn n_generators(self) -> usize {
        match self {
            Encoding::OneQubit => 2,
            Encoding::TwoQubit => 5,
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Encoding::OneQubit => "one_qubit",
            Encoding::TwoQubit => "two_qubit",
        })
    }
}

impl FromStr for Encoding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "one_qubit" | "one" | "1" => Ok(Encoding::OneQubit),
            "two_qubit" | "two" | "2" => Ok(Encoding::TwoQubit),
            _ => Err(format!("unknown encoding '{s}'")),
        }
    }
}

/// An SU(2)_k anyon model with a chosen qubit anyon label.
#[derive(Debug)]
pub struct AnyonModel {
    level: u32,
    qubit_label: DoubledSpin,
    symbols: SymbolTable,
}

impl AnyonModel {
    /// Uses the spin-1/2 anyon, except at `k = 3` where the Fibonacci anyon
    /// (spin 1, label 2) is used.
    pub fn new(level: u32) -> Result<Self, AnyonError> {
        let label = if level == 3 { 2 } else { 1 };
        Self::with_qubit_label(level, label)
    }

    pub fn with_qubit_label(level: u32, label: u32) -> Result<Self, AnyonError> {
        if level < 3 {
            return Err(AnyonError::Level(level));
        }
        let s = DoubledSpin(label);
        if fusion_channels(s, s, level) != [DoubledSpin(0), DoubledSpin(2)] {
            return Err(AnyonError::QubitLabel { label, level });
        }
        Ok(AnyonModel {
            level,
            qubit_label: s,
            symbols: SymbolTable::new(level)?,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn qubit_label(&self) -> DoubledSpin {
        self.qubit_label
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    /// `false` at `k = 4`, where braiding alone is not dense in SU(2).
    pub fn braiding_universal(&self) -> bool {
        self.level != 4
    }

    fn r(&self, channel: u32) -> Complex64 {
        let s = self.qubit_label;
        self.symbols
            .r(s, s, DoubledSpin(channel))
            .expect("qubit channels are admissible")
    }

    /// `[R^{ss}_0, R^{ss}_2]`.
    pub fn r_pair(&self) -> [Complex64; 2] {
        [self.r(0), self.r(2)]
    }

    /// `F^{sss}_s`, rows and columns indexed by channel `{0, 2}`.
    pub fn f_qubit(&self) -> [[f64; 2]; 2] {
        let s = self.qubit_label;
        let f = |a, b| self.symbols.f(s, s, s, s, DoubledSpin(a), DoubledSpin(b));
        [[f(0, 0), f(0, 2)], [f(2, 0), f(2, 2)]]
    }

    pub fn generators(&self, encoding: Encoding) -> Generators {
        match encoding {
            Encoding::OneQubit => Generators::One(self.one_qubit_generators()),
            Encoding::TwoQubit => Generators::Two(self.two_qubit_generators()),
        }
    }

    pub fn one_qubit_generators(&self) -> GeneratorSet<2> {
        let [r0, r2] = self.r_pair();
        let f = self.f_qubit();
        let sigma1 = Mat2::from_diagonal(&nalgebra::Vector2::new(r0, r2));
        let fm = Mat2::from_fn(|i, j| Complex64::from(f[i][j]));
        // F is real orthogonal: F⁻¹ = Fᵀ.
        let sigma2 = fm * sigma1 * fm.transpose();
        GeneratorSet::new(vec![sigma1, sigma2])
    }

    pub fn two_qubit_generators(&self) -> GeneratorSet<5> {
        let s = self.qubit_label;
        let sym = &self.symbols;
        let two = DoubledSpin(2);
        let nc = sym
            .fusion_channels(two, s)
            .into_iter()
            .find(|&c| c != s)
            .expect("2 ⊗ s has two channels");
        let basis = [
            (two, two, nc),
            (DoubledSpin(0), DoubledSpin(0), s),
            (DoubledSpin(0), two, s),
            (two, DoubledSpin(0), s),
            (two, two, s),
        ];
        let pair_channels = sym.fusion_channels(s, s);
        let r = |e: DoubledSpin| self.r(e.0);
        let zero = Complex64::new(0.0, 0.0);

        let mut sigma = [Mat5::zeros(); 5];
        for (col, &(a, b, c)) in basis.iter().enumerate() {
            sigma[0][(col, col)] = r(a);
            sigma[4][(col, col)] = r(b);
            for (row, &(a2, b2, c2)) in basis.iter().enumerate() {
                // σ2: anyons 2,3 inside ((s s)_a s)_c.
                if b2 == b && c2 == c {
                    sigma[1][(row, col)] = pair_channels.iter().fold(zero, |acc, &e| {
                        acc + r(e) * sym.f(s, s, s, c, a2, e) * sym.f(s, s, s, c, a, e)
                    });
                }
                // σ4: anyons 4,5 inside (s (s s)_b)_c.
                if a2 == a && c2 == c {
                    sigma[3][(row, col)] = pair_channels.iter().fold(zero, |acc, &e| {
                        acc + r(e) * sym.f(s, s, s, c, e, b2) * sym.f(s, s, s, c, e, b)
                    });
                }
                // σ3: anyons 3,4 straddle the two triples. Re-bracket
                // (c (s b)_c)_0 -> ((c s)_b b)_0 (a 1x1 move, ±1), then
                // ((a s)_c s)_b -> (a (s s)_e)_b, braid, and undo.
                if a2 == a && b2 == b {
                    let alpha = |c: DoubledSpin| sym.f(c, s, b, DoubledSpin(0), b, c);
                    let inner = pair_channels.iter().fold(zero, |acc, &e| {
                        acc + r(e) * sym.f(a, s, s, b, c2, e) * sym.f(a, s, s, b, c, e)
                    });
                    sigma[2][(row, col)] = inner * alpha(c) * alpha(c2);
                }
            }
        }
        GeneratorSet::new(sigma.to_vec())
    }
}

/// Braiding matrices `σ1..σn` with their inverses precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet<const D: usize> {
    matrices: Vec<Mat<D>>,
    inverses: Vec<Mat<D>>,
    include_inverses: bool,
}

impl<const D: usize> GeneratorSet<D> {
    pub fn new(matrices: Vec<Mat<D>>) -> Self {
        let inverses = matrices.iter().map(|m| m.adjoint()).collect();
        GeneratorSet {
            matrices,
            inverses,
            include_inverses: true,
        }
    }

    /// Whether searches may use inverse letters.
    pub fn with_inverses(mut self, include: bool) -> Self {
        self.include_inverses = include;
        self
    }

    pub fn include_inverses(&self) -> bool {
        self.include_inverses
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[Mat<D>] {
        &self.matrices
    }

    pub fn generator(&self, i: usize) -> &Mat<D> {
        &self.matrices[i]
    }

    /// Letters available to a search, in alphabet order.
    pub fn alphabet(&self) -> Vec<Letter> {
        let n = self.len() as u8;
        let forward = (0..n).map(Letter::forward);
        if self.include_inverses {
            forward.chain((0..n).map(Letter::inverse)).collect()
        } else {
            forward.collect()
        }
    }

    pub fn letter_matrix(&self, letter: Letter) -> Result<&Mat<D>, AnyonError> {
        let i = letter.generator as usize;
        let table = if letter.inverse {
            &self.inverses
        } else {
            &self.matrices
        };
        table.get(i).ok_or(AnyonError::IndexOutOfRange {
            index: i + 1,
            n: self.len(),
        })
    }
}

/// A generator set for either encoding.
#[derive(Debug, Clone)]
pub enum Generators {
    One(GeneratorSet<2>),
    Two(GeneratorSet<5>),
}

impl Generators {
    pub fn encoding(&self) -> Encoding {
        match self {
            Generators::One(_) => Encoding::OneQubit,
            Generators::Two(_) => Encoding::TwoQubit,
        }
    }
}

/// A generator or its inverse, `generator` counted from 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn forward(generator: u8) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inverse(generator: u8) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// Position in the alphabet `σ1..σn, σ1⁻¹..σn⁻¹`.
    pub fn alphabet_index(self, n_generators: usize) -> usize {
        self.generator as usize + if self.inverse { n_generators } else { 0 }
    }

    pub fn to_char(self, n_generators: usize) -> char {
        (b'A' + self.alphabet_index(n_generators) as u8) as char
    }

    pub fn from_char(c: char, n_generators: usize) -> Result<Self, AnyonError> {
        if !c.is_ascii_uppercase() {
            return Err(AnyonError::BadLetter(c));
        }
        let idx = (c as u8 - b'A') as usize;
        if idx < n_generators {
            Ok(Letter::forward(idx as u8))
        } else if idx < 2 * n_generators {
            Ok(Letter::inverse((idx - n_generators) as u8))
        } else {
            Err(AnyonError::BadLetter(c))
        }
    }
}

/// A sequence of generator letters over an alphabet of `n_generators`
/// generators. Text form uses `A..` for `σ1..σn` followed by their
/// inverses, so the one-qubit alphabet is `A/B/C/D = σ1/σ2/σ1⁻¹/σ2⁻¹` and
/// the two-qubit alphabet `A-E = σ1..σ5`, `F-J` their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Braidword {
    n_generators: usize,
    letters: Vec<Letter>,
}

impl Braidword {
    pub fn empty(n_generators: usize) -> Self {
        Braidword {
            n_generators,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(n_generators: usize, letters: Vec<Letter>) -> Self {
        Braidword {
            n_generators,
            letters,
        }
    }

    /// Parses the letter form; whitespace is ignored.
    pub fn parse(text: &str, n_generators: usize) -> Result<Self, AnyonError> {
        let letters = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Letter::from_char(c, n_generators))
            .collect::<Result<_, _>>()?;
        Ok(Braidword {
            n_generators,
            letters,
        })
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_inverses(&self) -> bool {
        self.letters.iter().any(|l| l.inverse)
    }

    /// The word of the inverse matrix: reversed, each letter inverted.
    pub fn inverse(&self) -> Self {
        Braidword {
            n_generators: self.n_generators,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// `self` followed by `other` (so `other` is applied after `self`).
    pub fn then(&self, other: &Braidword) -> Self {
        debug_assert_eq!(self.n_generators, other.n_generators);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Braidword {
            n_generators: self.n_generators,
            letters,
        }
    }
}

impl fmt::Display for Braidword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char(self.n_generators))?;
        }
        Ok(())
    }
}

/// Matrix of a braidword: `σ_{wn} ⋯ σ_{w1}`.
pub fn evaluate_braidword<const D: usize>(
    word: &Braidword,
    gens: &GeneratorSet<D>,
) -> Result<Mat<D>, AnyonError> {
    if word.n_generators() != gens.len() {
        return Err(AnyonError::AlphabetMismatch {
            word: word.n_generators(),
            set: gens.len(),
        });
    }
    let mut m = Mat::<D>::identity();
    for &l in word.letters() {
        m = gens.letter_matrix(l)? * m;
    }
    Ok(m)
}

/// Worst operator-norm residuals of the braid relations and of unitarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationResiduals {
    /// `σi σi+1 σi − σi+1 σi σi+1`
    pub yang_baxter: f64,
    /// `σi σj − σj σi` for `|i − j| ≥ 2`
    pub far_commutation: f64,
    /// `σi† σi − I`
    pub unitarity: f64,
}

fn op_norm<const D: usize>(m: &Mat<D>) -> f64 {
    nalgebra::DMatrix::from_iterator(D, D, m.iter().copied())
        .singular_values()
        .max()
}

impl<const D: usize> GeneratorSet<D> {
    pub fn relation_residuals(&self) -> RelationResiduals {
        let s = &self.matrices;
        let mut out = RelationResiduals {
            yang_baxter: 0.0,
            far_commutation: 0.0,
            unitarity: 0.0,
        };
        for i in 0..s.len() {
            out.unitarity = out
                .unitarity
                .max(op_norm(&(s[i].adjoint() * s[i] - Mat::<D>::identity())));
            if i + 1 < s.len() {
                let (a, b) = (&s[i], &s[i + 1]);
                out.yang_baxter = out.yang_baxter.max(op_norm(&(a * b * a - b * a * b)));
            }
            for j in i + 2..s.len() {
                out.far_commutation = out
                    .far_commutation
                    .max(op_norm(&(s[i] * s[j] - s[j] * s[i])));
            }
        }
        out
    }
}

/// `B = M ⊕ A`: the non-computational element and the computational block.
pub fn split_blocks(b: &Mat5) -> (Complex64, Mat4) {
    (b[(0, 0)], b.fixed_view::<4, 4>(1, 1).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_abs<const D: usize>(m: &Mat<D>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn rejects_low_levels_and_bad_labels() {
        assert_eq!(AnyonModel::new(2).unwrap_err(), AnyonError::Level(2));
        assert!(AnyonModel::with_qubit_label(5, 2).is_err());
        assert!(AnyonModel::with_qubit_label(5, 4).is_ok());
        assert!(!AnyonModel::new(4).unwrap().braiding_universal());
        assert!(AnyonModel::new(5).unwrap().braiding_universal());
    }

    #[test]
    fn sigma1_k5() {
        let g = AnyonModel::new(5).unwrap().one_qubit_generators();
        let s1 = g.generator(0);
        assert!((s1[(0, 0)] - c(-0.781_831_48, 0.623_489_80)).norm() < 1e-8);
        assert!((s1[(1, 1)] - c(0.974_927_91, 0.222_520_93)).norm() < 1e-8);
        assert_eq!(s1[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn sigma2_k7() {
        let g = AnyonModel::new(7).unwrap().one_qubit_generators();
        assert!((g.generator(1)[(0, 0)] - c(0.460_802_49, 0.266_044_44)).norm() < 1e-8);
    }

    #[test]
    fn fibonacci_phases() {
        let g = AnyonModel::new(3).unwrap().one_qubit_generators();
        let s1 = g.generator(0);
        assert!((s1[(0, 0)] - Complex64::from_polar(1.0, -4.0 * PI / 5.0)).norm() < 1e-14);
        assert!((s1[(1, 1)] - Complex64::from_polar(1.0, 3.0 * PI / 5.0)).norm() < 1e-14);
    }

    #[test]
    fn sigma3_printed_entries() {
        let g = AnyonModel::new(5).unwrap().two_qubit_generators();
        let s3 = g.generator(2);
        assert!((s3[(0, 0)] - c(0.0, 0.445_041_87)).norm() < 1e-8);
        assert!((s3[(0, 4)] - c(0.873_057_46, -0.199_269_67)).norm() < 1e-8);
        let g = AnyonModel::new(6).unwrap().two_qubit_generators();
        assert!((g.generator(2)[(4, 4)] - c(0.230_124_73, 0.344_405_99)).norm() < 1e-8);
    }

    #[test]
    fn sigma3_couples_only_nc_and_11() {
        for k in 3..=10 {
            let s3 = *AnyonModel::new(k)
                .unwrap()
                .two_qubit_generators()
                .generator(2);
            for i in 0..5 {
                for j in 0..5 {
                    let coupled = i == j || (i, j) == (0, 4) || (i, j) == (4, 0);
                    if !coupled {
                        assert_eq!(s3[(i, j)], c(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn sigma5_is_diagonal_r() {
        for k in 3..=8 {
            let m = AnyonModel::new(k).unwrap();
            let [r0, r2] = m.r_pair();
            let s5 = *m.two_qubit_generators().generator(4);
            let want = Mat5::from_diagonal(&nalgebra::Vector5::new(r2, r0, r2, r0, r2));
            assert!(max_abs(&(s5 - want)) < 1e-15);
        }
    }

    #[test]
    fn direct_sum_structure_matches_tensor_formulas() {
        for k in 3..=10 {
            let m = AnyonModel::new(k).unwrap();
            let one = m.one_qubit_generators();
            let two = m.two_qubit_generators();
            let r2 = m.r_pair()[1];
            let id = Mat2::identity();
            let embed = |x: SMatrix<Complex64, 4, 4>| {
                let mut out = Mat5::zeros();
                out[(0, 0)] = r2;
                out.fixed_view_mut::<4, 4>(1, 1).copy_from(&x);
                out
            };
            let expected = [
                (0, embed(one.generator(0).kronecker(&id))),
                (1, embed(one.generator(1).kronecker(&id))),
                (3, embed(id.kronecker(one.generator(1)))),
                (4, embed(id.kronecker(one.generator(0)))),
            ];
            for (i, want) in expected {
                assert!(
                    max_abs(&(two.generator(i) - want)) <= 1e-14,
                    "k={k} σ{}",
                    i + 1
                );
            }
        }
    }

    #[test]
    fn braidword_text_round_trip() {
        let w = Braidword::parse("CDADDADC BADD", 2).unwrap();
        assert_eq!(w.len(), 12);
        assert_eq!(w.to_string(), "CDADDADCBADD");
        assert_eq!(w.letters()[0], Letter::inverse(0));
        assert_eq!(w.letters()[1], Letter::inverse(1));
        let w = Braidword::parse("AEFJ", 5).unwrap();
        assert_eq!(
            w.letters(),
            &[
                Letter::forward(0),
                Letter::forward(4),
                Letter::inverse(0),
                Letter::inverse(4)
            ]
        );
        assert!(Braidword::parse("E", 2).is_err());
        assert!(Braidword::parse("K", 5).is_err());
        assert!(Braidword::parse("a", 5).is_err());
    }

    #[test]
    fn evaluate_conventions() {
        let g = AnyonModel::new(5).unwrap().one_qubit_generators();
        let empty = evaluate_braidword(&Braidword::empty(2), &g).unwrap();
        assert_eq!(empty, Mat2::identity());
        let a = evaluate_braidword(&Braidword::parse("A", 2).unwrap(), &g).unwrap();
        assert_eq!(a, *g.generator(0));
        // leftmost letter applied first
        let ab = evaluate_braidword(&Braidword::parse("AB", 2).unwrap(), &g).unwrap();
        assert!(max_abs(&(ab - g.generator(1) * g.generator(0))) < 1e-15);
        let w = Braidword::parse("ABDCAB", 2).unwrap();
        let m = evaluate_braidword(&w, &g).unwrap();
        let mi = evaluate_braidword(&w.inverse(), &g).unwrap();
        assert!(max_abs(&(m * mi - Mat2::identity())) < 1e-14);
        let two = AnyonModel::new(5).unwrap().two_qubit_generators();
        assert!(matches!(
            evaluate_braidword(&w, &two),
            Err(AnyonError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn split_blocks_of_generators() {
        let m = AnyonModel::new(5).unwrap();
        let [r0, r2] = m.r_pair();
        let s5 = *m.two_qubit_generators().generator(4);
        let (nc, a) = split_blocks(&s5);
        assert_eq!(nc, r2);
        let want = nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::new(r0, r2, r0, r2));
        assert!((a - want).iter().all(|z| z.norm() < 1e-15));
        let (nc, a) = split_blocks(&Mat5::identity());
        assert_eq!(nc, c(1.0, 0.0));
        assert_eq!(a, Mat4::identity());
    }

    #[test]
    fn alphabet_sizes() {
        let g = AnyonModel::new(6).unwrap().two_qubit_generators();
        assert_eq!(g.alphabet().len(), 10);
        assert_eq!(g.clone().with_inverses(false).alphabet().len(), 5);
        let text: String = g.alphabet().iter().map(|l| l.to_char(5)).collect();
        assert_eq!(text, "ABCDEFGHIJ");
    }

    #[test]
    fn braid_relations_hold_for_all_levels() {
        for k in 3..=10 {
            let model = AnyonModel::new(k).unwrap();
            let one = model.one_qubit_generators().relation_residuals();
            let two = model.two_qubit_generators().relation_residuals();
            for r in [one, two] {
                assert!(r.yang_baxter <= 1e-10, "k={k} {r:?}");
                assert!(r.far_commutation <= 1e-10, "k={k} {r:?}");
                assert!(r.unitarity <= 1e-12, "k={k} {r:?}");
            }
        }
    }

    #[test]
    fn conjugate_label_gives_equivalent_generators() {
        use crate::metrics::phase_invariant_distance;
        let a = AnyonModel::with_qubit_label(5, 1).unwrap();
        let b = AnyonModel::with_qubit_label(5, 4).unwrap();
        let (a1, b1) = (a.one_qubit_generators(), b.one_qubit_generators());
        for i in 0..2 {
            let d = phase_invariant_distance(a1.generator(i), b1.generator(i));
            assert!(d <= 1e-10, "one-qubit σ{} {d:e}", i + 1);
        }
        let (a2, b2) = (a.two_qubit_generators(), b.two_qubit_generators());
        for i in 0..5 {
            let d = phase_invariant_distance(a2.generator(i), b2.generator(i));
            assert!(d <= 1e-10, "two-qubit σ{} {d:e}", i + 1);
        }
    }
}
