//! The homology representation: integer symplectic matrices.
//!
//! First homology of a genus-`g` surface with one boundary component is free
//! abelian of rank `2g` with basis `A_1, B_1, ..., A_g, B_g` (the classes of
//! the fundamental-group basis `x_1, y_1, ..., x_g, y_g`), carrying the
//! intersection pairing with `<A_i, B_i> = +1`. A twist about a curve of
//! class `c` acts as the transvection `x -> x + <x, c> c`.
//!
//! Matrix entries are arbitrary-precision integers; products of many
//! transvections overflow fixed-width types quickly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::autfree::{AutError, TwistTable};
use crate::word::Word;

/// Errors from homology-level computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpError {
    /// Operands live over different genera.
    GenusMismatch,
    /// A coefficient vector has odd or zero length.
    BadRank { len: usize },
    /// Integer overflow in fixed-width coefficient arithmetic.
    Overflow,
}

impl fmt::Display for SpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpError::GenusMismatch => write!(f, "operands have different genera"),
            SpError::BadRank { len } => {
                write!(f, "coefficient vector length {len} is not a positive even number")
            }
            SpError::Overflow => write!(f, "coefficient overflow"),
        }
    }
}

impl std::error::Error for SpError {}

/// An integral first-homology class in the basis `A_1, B_1, ..., A_g, B_g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    coeffs: Vec<i64>,
}

impl HomologyClass {
    /// Wraps a coefficient vector; the length must be `2g > 0`.
    pub fn new(coeffs: Vec<i64>) -> Result<HomologyClass, SpError> {
        if coeffs.is_empty() || coeffs.len() % 2 != 0 {
            return Err(SpError::BadRank { len: coeffs.len() });
        }
        Ok(HomologyClass { coeffs })
    }

    /// The zero class at a given genus.
    pub fn zero(genus: usize) -> HomologyClass {
        HomologyClass {
            coeffs: vec![0; 2 * genus.max(1)],
        }
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Algebraic intersection pairing `<u, v>` with `<A_i, B_i> = +1`.
pub fn pairing(u: &HomologyClass, v: &HomologyClass) -> Result<i64, SpError> {
    if u.coeffs.len() != v.coeffs.len() {
        return Err(SpError::GenusMismatch);
    }
    let mut acc: i128 = 0;
    for i in 0..u.genus() {
        let (a, b) = (2 * i, 2 * i + 1);
        acc += u.coeffs[a] as i128 * v.coeffs[b] as i128
            - u.coeffs[b] as i128 * v.coeffs[a] as i128;
    }
    i64::try_from(acc).map_err(|_| SpError::Overflow)
}

/// A square integer matrix of size `2g`, row-major.
///
/// The name records intent: these arise as homology actions and are
/// symplectic whenever produced by this crate, but the type itself does not
/// force the condition; use [`is_symplectic`] to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SympMatrix {
    genus: usize,
    entries: Vec<BigInt>,
}

impl SympMatrix {
    pub fn identity(genus: usize) -> SympMatrix {
        let n = 2 * genus;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        SympMatrix { genus, entries }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Side length `2g`.
    pub fn size(&self) -> usize {
        2 * self.genus
    }

    pub fn at(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.size() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: BigInt) {
        let n = self.size();
        self.entries[row * n + col] = v;
    }

    pub fn is_identity(&self) -> bool {
        let n = self.size();
        self.entries.iter().enumerate().all(|(k, e)| {
            if k / n == k % n {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &SympMatrix) -> Result<SympMatrix, SpError> {
        if self.genus != other.genus {
            return Err(SpError::GenusMismatch);
        }
        let n = self.size();
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(SympMatrix {
            genus: self.genus,
            entries,
        })
    }

    pub fn transpose(&self) -> SympMatrix {
        let n = self.size();
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        SympMatrix {
            genus: self.genus,
            entries,
        }
    }

    /// Image of a class under this matrix.
    pub fn apply(&self, v: &HomologyClass) -> Result<Vec<BigInt>, SpError> {
        if v.genus() != self.genus {
            return Err(SpError::GenusMismatch);
        }
        let n = self.size();
        let mut out = vec![BigInt::zero(); n];
        for (p, slot) in out.iter_mut().enumerate() {
            for q in 0..n {
                if v.coeffs[q] != 0 {
                    *slot += self.at(p, q) * v.coeffs[q];
                }
            }
        }
        Ok(out)
    }
}

/// The standard symplectic form `J` with `<A_i, B_i> = +1`.
pub fn standard_form(genus: usize) -> SympMatrix {
    let mut j = SympMatrix::identity(genus);
    let n = 2 * genus;
    for k in 0..n {
        j.set(k, k, BigInt::zero());
    }
    for i in 0..genus {
        j.set(2 * i, 2 * i + 1, BigInt::one());
        j.set(2 * i + 1, 2 * i, -BigInt::one());
    }
    j
}

/// Whether `m` preserves the intersection form: `mᵀ J m = J`.
pub fn is_symplectic(m: &SympMatrix) -> bool {
    let j = standard_form(m.genus);
    match m.transpose().mul(&j).and_then(|t| t.mul(m)) {
        Ok(p) => p == j,
        Err(_) => false,
    }
}

/// The transvection `x -> x + <x, c> c` as a matrix.
pub fn transvection(c: &HomologyClass) -> SympMatrix {
    transvection_power(c, 1)
}

/// The transvection along `c` or its inverse: `x -> x + sign <x, c> c`.
pub fn transvection_power(c: &HomologyClass, sign: i64) -> SympMatrix {
    let mut m = SympMatrix::identity(c.genus());
    let n = 2 * c.genus();
    let v = c.coeffs();
    for q in 0..n {
        // <e_q, c> in the A_1, B_1, ... basis.
        let pr = if q % 2 == 0 { v[q + 1] } else { -v[q - 1] };
        if pr == 0 {
            continue;
        }
        for p in 0..n {
            if v[p] != 0 {
                let add = BigInt::from(sign) * pr * v[p];
                let cur = m.at(p, q).clone();
                m.set(p, q, cur + add);
            }
        }
    }
    m
}

/// Homology action of a word of twist-generator labels: the left-to-right
/// product of the letters' transvections. Equal to the abelianization of the
/// fundamental-group action of the same word.
pub fn sp_of_word(table: &TwistTable, w: &Word) -> Result<SympMatrix, AutError> {
    let mut m = SympMatrix::identity(table.genus());
    let abc = w.alphabet();
    for l in w.letters() {
        let name = abc.name(l.index);
        let class = table
            .class(name)
            .ok_or_else(|| AutError::UnknownLabel { name: name.to_string() })?;
        let t = transvection_power(class, l.sign as i64);
        m = m.mul(&t).expect("genus fixed by table");
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autfree::TwistTable;
    use crate::word::{Alphabet, Word};
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cls(coeffs: &[i64]) -> HomologyClass {
        HomologyClass::new(coeffs.to_vec()).unwrap()
    }

    #[test]
    fn pairing_is_antisymmetric_with_unit_handles() {
        let a1 = cls(&[1, 0, 0, 0]);
        let b1 = cls(&[0, 1, 0, 0]);
        let a2 = cls(&[0, 0, 1, 0]);
        assert_eq!(pairing(&a1, &b1).unwrap(), 1);
        assert_eq!(pairing(&b1, &a1).unwrap(), -1);
        assert_eq!(pairing(&a1, &a2).unwrap(), 0);
        assert_eq!(pairing(&a1, &a1).unwrap(), 0);
    }

    #[test]
    fn transvection_moves_classes_by_pairing() {
        let c = cls(&[1, -2, 0, 3]);
        let t = transvection(&c);
        assert!(is_symplectic(&t));
        for probe in [
            cls(&[1, 0, 0, 0]),
            cls(&[0, 1, 0, 0]),
            cls(&[2, -1, 4, 5]),
        ] {
            let image = t.apply(&probe).unwrap();
            let k = pairing(&probe, &c).unwrap();
            for p in 0..4 {
                let expect = probe.coeffs()[p] as i128 + k as i128 * c.coeffs()[p] as i128;
                assert_eq!(image[p].to_i128().unwrap(), expect);
            }
        }
        // The inverse transvection undoes it.
        let prod = t.mul(&transvection_power(&c, -1)).unwrap();
        assert!(prod.is_identity());
    }

    #[test]
    fn standard_form_is_not_symplectic_breaking() {
        let j = standard_form(2);
        assert!(is_symplectic(&j));
        let mut bad = SympMatrix::identity(2);
        bad.set(0, 1, BigInt::from(1));
        bad.set(1, 0, BigInt::from(0));
        // Shear along a non-isotropic direction in the wrong basis pairing.
        bad.set(0, 0, BigInt::from(2));
        assert!(!is_symplectic(&bad));
    }

    #[test]
    fn sp_of_word_matches_abelianized_action() {
        for genus in [2usize, 3] {
            let table = TwistTable::standard(genus);
            let labels: Vec<String> = table.labels().to_vec();
            let abc = Alphabet::new(labels.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE + genus as u64);
            for _ in 0..12 {
                let len = rng.gen_range(1..18);
                let mut text = String::new();
                for _ in 0..len {
                    let lab = &labels[rng.gen_range(0..labels.len())];
                    text.push_str(lab);
                    if rng.gen_bool(0.5) {
                        text.push('\'');
                    }
                    text.push(' ');
                }
                let w = Word::parse(&abc, &text).unwrap();
                let via_matrices = sp_of_word(&table, &w).unwrap();
                let via_pi1 = table.evaluate_word(&w).unwrap().abelianize().unwrap();
                assert_eq!(via_matrices, via_pi1);
                assert!(is_symplectic(&via_matrices));
            }
        }
    }
}
