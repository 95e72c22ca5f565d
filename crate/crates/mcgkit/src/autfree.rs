//! Endomorphisms of a free group and the Dehn twist action on the
//! fundamental group of a surface.
//!
//! The fundamental group of a compact orientable genus-`g` surface with one
//! boundary component is free on `x_1, y_1, ..., x_g, y_g`, chosen so that
//! the boundary is `[x_1,y_1][x_2,y_2]...[x_g,y_g]` and `x_i`, `y_i` are the
//! meridian/longitude pair of the `i`-th handle with intersection
//! `<[x_i],[y_i]> = +1`. A mapping class fixing the boundary pointwise acts
//! on this free group fixing the boundary word letter for letter.
//!
//! [`TwistTable::standard`] carries the action of the twist generators
//! `b_1, b_2, a_i, e_i` about the standard chain of curves:
//!
//! * `a_i` twists about the meridian of handle `i` (class `A_i`),
//! * `b_i` twists about the longitude of handle `i` (class `B_i`, shipped
//!   for `i = 1, 2`),
//! * `e_i` twists about a curve running through handles `i` and `i+1`
//!   (class `B_i - B_{i+1}`).
//!
//! The sign convention (which twist is "positive") is pinned by validation:
//! every entry must abelianize to the transvection of its declared class,
//! and the chain relations of the group must hold with their stated
//! exponents. See [`TwistTable::validate`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use crate::symplectic::{transvection_power, HomologyClass, SympMatrix};
use crate::word::{
    max_word_len, push_reduced, same_alphabet, Alphabet, Word, WordError,
};

/// Errors from automorphism computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutError {
    Word(WordError),
    /// A cooperative deadline expired.
    Timeout,
    /// A word letter has no entry in the twist table.
    UnknownLabel { name: String },
    /// Image list length does not match the alphabet rank.
    RankMismatch { expected: usize, got: usize },
    /// Inversion did not terminate at a basis.
    NotInvertible { reason: String },
}

impl From<WordError> for AutError {
    fn from(e: WordError) -> Self {
        AutError::Word(e)
    }
}

impl fmt::Display for AutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutError::Word(e) => write!(f, "{e}"),
            AutError::Timeout => write!(f, "deadline exceeded"),
            AutError::UnknownLabel { name } => write!(f, "no table entry for `{name}`"),
            AutError::RankMismatch { expected, got } => {
                write!(f, "expected {expected} generator images, got {got}")
            }
            AutError::NotInvertible { reason } => write!(f, "cannot invert: {reason}"),
        }
    }
}

impl std::error::Error for AutError {}

/// A cooperative computation budget: a wall-clock deadline checked at
/// arithmetic step boundaries.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn none() -> Budget {
        Budget { deadline: None }
    }

    pub fn until(deadline: Instant) -> Budget {
        Budget {
            deadline: Some(deadline),
        }
    }

    #[inline]
    pub fn check(&self) -> Result<(), AutError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(AutError::Timeout),
            _ => Ok(()),
        }
    }
}

/// An endomorphism of a free group, given by the images of the generators.
///
/// Invertibility is not represented in the type; entries of a validated
/// [`TwistTable`] are automorphisms by construction.
#[derive(Debug, Clone)]
pub struct Endo {
    abc: Arc<Alphabet>,
    images: Vec<Word>,
}

impl PartialEq for Endo {
    fn eq(&self, other: &Self) -> bool {
        same_alphabet(&self.abc, &other.abc) && self.images == other.images
    }
}

impl Eq for Endo {}

impl Endo {
    pub fn identity(abc: &Arc<Alphabet>) -> Endo {
        let images = (0..abc.rank())
            .map(|i| Word::from_reduced_unchecked(abc, vec![(i + 1) as i32]))
            .collect();
        Endo {
            abc: Arc::clone(abc),
            images,
        }
    }

    pub fn new(abc: &Arc<Alphabet>, images: Vec<Word>) -> Result<Endo, AutError> {
        if images.len() != abc.rank() {
            return Err(AutError::RankMismatch {
                expected: abc.rank(),
                got: images.len(),
            });
        }
        for im in &images {
            if !same_alphabet(im.alphabet(), abc) {
                return Err(AutError::Word(WordError::AlphabetMismatch));
            }
        }
        Ok(Endo {
            abc: Arc::clone(abc),
            images,
        })
    }

    /// The inner automorphism `v -> w v w^-1`.
    pub fn conjugation_by(w: &Word) -> Result<Endo, AutError> {
        let abc = w.alphabet();
        let mut images = Vec::with_capacity(abc.rank());
        for i in 0..abc.rank() {
            let x = Word::from_reduced_unchecked(abc, vec![(i + 1) as i32]);
            images.push(w.conjugate(&x)?);
        }
        Ok(Endo {
            abc: Arc::clone(abc),
            images,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.abc
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of the generator with 0-based index `index`.
    pub fn image(&self, index: usize) -> &Word {
        &self.images[index]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.codes() == [(i + 1) as i32])
    }

    /// Substitutes generator images into a raw code sequence.
    fn apply_codes(&self, codes: &[i32]) -> Result<Vec<i32>, AutError> {
        let max = max_word_len();
        let mut out = Vec::with_capacity(codes.len());
        for &c in codes {
            let img = self.images[(c.unsigned_abs() - 1) as usize].codes();
            if c > 0 {
                for &d in img {
                    push_reduced(&mut out, d);
                }
            } else {
                for &d in img.iter().rev() {
                    push_reduced(&mut out, -d);
                }
            }
            if out.len() > max {
                return Err(AutError::Word(WordError::LengthGuard {
                    len: out.len(),
                    max,
                }));
            }
        }
        Ok(out)
    }

    /// Image of a word under this endomorphism.
    pub fn apply(&self, w: &Word) -> Result<Word, AutError> {
        if !same_alphabet(&self.abc, w.alphabet()) {
            return Err(AutError::Word(WordError::AlphabetMismatch));
        }
        let out = self.apply_codes(w.codes())?;
        Ok(Word::from_reduced_unchecked(&self.abc, out))
    }

    /// Composition `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Endo) -> Result<Endo, AutError> {
        if !same_alphabet(&self.abc, &other.abc) {
            return Err(AutError::Word(WordError::AlphabetMismatch));
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Endo {
            abc: Arc::clone(&self.abc),
            images,
        })
    }

    /// Abelianization: the matrix whose column `i` is the exponent vector of
    /// the image of generator `i`. Requires even rank `2g`.
    pub fn abelianize(&self) -> Result<SympMatrix, AutError> {
        let n = self.abc.rank();
        if n == 0 || n % 2 != 0 {
            return Err(AutError::RankMismatch {
                expected: n.max(2),
                got: n,
            });
        }
        let mut m = SympMatrix::identity(n / 2);
        for q in 0..n {
            let mut col = vec![0i64; n];
            for l in self.images[q].letters() {
                col[l.index] += l.sign as i64;
            }
            for (p, &v) in col.iter().enumerate() {
                m.set(p, q, v.into());
            }
        }
        Ok(m)
    }

    /// Inverts an automorphism by greedy Nielsen reduction of the image
    /// tuple, tracking the elementary moves applied.
    ///
    /// Succeeds exactly when strictly length-reducing elementary moves bring
    /// the image tuple to a signed permuted basis; this covers compositions
    /// of twist-table entries. The result is verified by composing both ways
    /// before it is returned.
    pub fn invert(&self) -> Result<Endo, AutError> {
        let n = self.abc.rank();
        let mut t: Vec<Word> = self.images.clone();
        let mut alpha = Endo::identity(&self.abc).images;
        loop {
            if t.iter().all(|w| w.len() == 1) {
                break;
            }
            let mut improved = false;
            'outer: for i in 0..n {
                if t[i].len() <= 1 {
                    continue;
                }
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let tj = if sign > 0 { t[j].clone() } else { t[j].invert() };
                        let right = t[i].concat(&tj)?;
                        if right.len() < t[i].len() {
                            let aj = if sign > 0 {
                                alpha[j].clone()
                            } else {
                                alpha[j].invert()
                            };
                            alpha[i] = alpha[i].concat(&aj)?;
                            t[i] = right;
                            improved = true;
                            break 'outer;
                        }
                        let left = tj.concat(&t[i])?;
                        if left.len() < t[i].len() {
                            let aj = if sign > 0 {
                                alpha[j].clone()
                            } else {
                                alpha[j].invert()
                            };
                            alpha[i] = aj.concat(&alpha[i])?;
                            t[i] = left;
                            improved = true;
                            break 'outer;
                        }
                    }
                }
            }
            if !improved {
                return Err(AutError::NotInvertible {
                    reason: "image tuple is not reducible to a basis by length-decreasing moves"
                        .into(),
                });
            }
        }
        // t is now a signed permutation x_i -> x_k^s; undo it through alpha.
        let mut seen = vec![false; n];
        let mut images = vec![Word::identity(&self.abc); n];
        for i in 0..n {
            let c = t[i].codes()[0];
            let k = (c.unsigned_abs() - 1) as usize;
            if seen[k] {
                return Err(AutError::NotInvertible {
                    reason: "image tuple reduced to a non-bijective letter map".into(),
                });
            }
            seen[k] = true;
            images[k] = if c > 0 { alpha[i].clone() } else { alpha[i].invert() };
        }
        let candidate = Endo {
            abc: Arc::clone(&self.abc),
            images,
        };
        if !self.compose(&candidate)?.is_identity() || !candidate.compose(self)?.is_identity() {
            return Err(AutError::NotInvertible {
                reason: "candidate inverse failed the two-sided check".into(),
            });
        }
        Ok(candidate)
    }
}

/// The fundamental-group alphabet `x1, y1, ..., xg, yg`.
pub fn pi1_alphabet(genus: usize) -> Arc<Alphabet> {
    assert!(genus >= 1, "genus must be at least 1");
    let mut names = Vec::with_capacity(2 * genus);
    for i in 1..=genus {
        names.push(format!("x{i}"));
        names.push(format!("y{i}"));
    }
    Alphabet::new(names)
}

/// The boundary word `[x1,y1][x2,y2]...[xg,yg]`.
pub fn boundary_word(pi1: &Arc<Alphabet>) -> Word {
    let genus = pi1.rank() / 2;
    let mut codes = Vec::with_capacity(4 * genus);
    for i in 0..genus {
        let x = (2 * i + 1) as i32;
        let y = x + 1;
        codes.extend_from_slice(&[x, y, -x, -y]);
    }
    Word::from_reduced_unchecked(pi1, codes)
}

/// Errors from building or validating a twist table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableError {
    Parse { line: usize, msg: String },
    Validation { entry: String, check: String, detail: String },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            TableError::Validation { entry, check, detail } => {
                write!(f, "entry `{entry}` fails {check}: {detail}")
            }
        }
    }
}

impl std::error::Error for TableError {}

#[derive(Debug)]
struct TableEntry {
    fwd: Endo,
    inv: Endo,
    class: HomologyClass,
}

/// The action of the twist generators on the fundamental group.
#[derive(Debug)]
pub struct TwistTable {
    genus: usize,
    pi1: Arc<Alphabet>,
    labels: Vec<String>,
    entries: HashMap<String, TableEntry>,
    boundary: Word,
}

fn red_vec(seq: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(seq.len());
    for &c in seq {
        push_reduced(&mut out, c);
    }
    out
}

fn inv_vec(seq: &[i32]) -> Vec<i32> {
    seq.iter().rev().map(|&c| -c).collect()
}

fn cat(parts: &[&[i32]]) -> Vec<i32> {
    let mut out = Vec::new();
    for p in parts {
        out.extend_from_slice(p);
    }
    out
}

impl TwistTable {
    /// The standard table at a given genus (`genus >= 1`).
    ///
    /// Entries: `b1`, `a1..ag`, `e1..e(g-1)`, and `b2` for `genus >= 2`.
    pub fn standard(genus: usize) -> TwistTable {
        assert!(genus >= 1, "genus must be at least 1");
        let pi1 = pi1_alphabet(genus);
        let n = 2 * genus;
        let ident: Vec<Vec<i32>> = (1..=n as i32).map(|c| vec![c]).collect();
        let mut labels: Vec<String> = Vec::new();
        if genus >= 2 {
            labels.push("b2".into());
        }
        labels.push("b1".into());
        for i in 1..=genus {
            labels.push(format!("a{i}"));
            if i < genus {
                labels.push(format!("e{i}"));
            }
        }

        let mut entries = HashMap::new();
        let mut put = |label: &str, fwd: Vec<Vec<i32>>, inv: Vec<Vec<i32>>, class: Vec<i64>| {
            let fwd = Endo {
                abc: Arc::clone(&pi1),
                images: fwd
                    .into_iter()
                    .map(|v| Word::from_reduced_unchecked(&pi1, v))
                    .collect(),
            };
            let inv = Endo {
                abc: Arc::clone(&pi1),
                images: inv
                    .into_iter()
                    .map(|v| Word::from_reduced_unchecked(&pi1, v))
                    .collect(),
            };
            entries.insert(
                label.to_string(),
                TableEntry {
                    fwd,
                    inv,
                    class: HomologyClass::new(class).expect("even rank"),
                },
            );
        };

        // b1: the longitude twist on handle 1.
        {
            let (mut fwd, mut inv) = (ident.clone(), ident.clone());
            fwd[0] = vec![1, 2];
            inv[0] = vec![1, -2];
            let mut h = vec![0; n];
            h[1] = 1;
            put("b1", fwd, inv, h);
        }
        // b2: the longitude twist on handle 2.
        if genus >= 2 {
            let (mut fwd, mut inv) = (ident.clone(), ident.clone());
            fwd[2] = vec![3, 4];
            inv[2] = vec![3, -4];
            let mut h = vec![0; n];
            h[3] = 1;
            put("b2", fwd, inv, h);
        }
        // a_i: meridian twists.
        for i in 1..=genus {
            let (x, y) = ((2 * i - 1) as i32, (2 * i) as i32);
            let (mut fwd, mut inv) = (ident.clone(), ident.clone());
            fwd[(y - 1) as usize] = vec![y, -x];
            inv[(y - 1) as usize] = vec![y, x];
            let mut h = vec![0; n];
            h[2 * (i - 1)] = 1;
            put(&format!("a{i}"), fwd, inv, h);
        }
        // e_i: twists through handles i and i+1.
        for i in 1..genus {
            let (x, y) = ((2 * i - 1) as i32, (2 * i) as i32);
            let (xx, yy) = (x + 2, y + 2);
            let u = [y, x, y, -x, -y];
            let ui = inv_vec(&u);
            let (mut fwd, mut inv) = (ident.clone(), ident.clone());
            fwd[(x - 1) as usize] = red_vec(&[x, y, -x, -y, -yy, y, x]);
            fwd[(xx - 1) as usize] = red_vec(&cat(&[&u, &[-yy], &ui, &[yy, xx, yy], &ui]));
            fwd[(yy - 1) as usize] = red_vec(&cat(&[&u, &[yy], &ui]));
            inv[(x - 1) as usize] = red_vec(&[-y, yy, y, x, -y]);
            inv[(xx - 1) as usize] = red_vec(&cat(&[&[yy], &ui, &[-yy], &u, &[xx], &u, &[-yy]]));
            inv[(yy - 1) as usize] = red_vec(&cat(&[&[yy], &ui, &[yy], &u, &[-yy]]));
            let mut h = vec![0; n];
            h[2 * i - 1] = 1;
            h[2 * i + 1] = -1;
            put(&format!("e{i}"), fwd, inv, h);
        }

        let boundary = boundary_word(&pi1);
        TwistTable {
            genus,
            pi1,
            labels,
            entries,
            boundary,
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn pi1_alphabet(&self) -> &Arc<Alphabet> {
        &self.pi1
    }

    /// Entry labels in presentation order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The boundary word fixed by every entry.
    pub fn boundary(&self) -> &Word {
        &self.boundary
    }

    /// The action of a labeled generator (`sign < 0` for its inverse).
    pub fn endo(&self, label: &str, sign: i8) -> Option<&Endo> {
        self.entries
            .get(label)
            .map(|e| if sign < 0 { &e.inv } else { &e.fwd })
    }

    /// Declared homology class of a generator.
    pub fn class(&self, label: &str) -> Option<&HomologyClass> {
        self.entries.get(label).map(|e| &e.class)
    }

    /// Action of a word of generator labels; the rightmost letter acts
    /// first. Letters are resolved by name, so any alphabet whose names are
    /// table labels works.
    pub fn evaluate_word(&self, w: &Word) -> Result<Endo, AutError> {
        self.evaluate_budget(w, Budget::none())
    }

    /// [`TwistTable::evaluate_word`] with a cooperative deadline.
    pub fn evaluate_budget(&self, w: &Word, budget: Budget) -> Result<Endo, AutError> {
        let abc = w.alphabet();
        let seq: Vec<&Endo> = w
            .letters()
            .map(|l| {
                let name = abc.name(l.index);
                self.entries
                    .get(name)
                    .map(|e| if l.sign < 0 { &e.inv } else { &e.fwd })
                    .ok_or_else(|| AutError::UnknownLabel {
                        name: name.to_string(),
                    })
            })
            .collect::<Result<_, _>>()?;
        let n = 2 * self.genus;
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let mut img = vec![(i + 1) as i32];
            for e in seq.iter().rev() {
                budget.check()?;
                img = e.apply_codes(&img)?;
            }
            images.push(Word::from_reduced_unchecked(&self.pi1, img));
        }
        Ok(Endo {
            abc: Arc::clone(&self.pi1),
            images,
        })
    }

    /// Checks the table against its defining properties:
    ///
    /// * V1: every entry fixes the boundary word exactly, and the stored
    ///   inverse really inverts the entry;
    /// * V2: every entry abelianizes to the transvection of its declared
    ///   class (the inverse to the inverse transvection);
    /// * V3: all chain relations (braiding and commutation) hold;
    /// * V4: the genus-2 chain relation holds (`genus >= 2`);
    /// * V5: the lantern-type relation holds (`genus >= 3`).
    pub fn validate(&self) -> Result<(), TableError> {
        let fail = |entry: &str, check: &str, detail: String| TableError::Validation {
            entry: entry.into(),
            check: check.into(),
            detail,
        };
        for label in &self.labels {
            let e = &self.entries[label];
            let fb = e.fwd.apply(&self.boundary).map_err(|err| {
                fail(label, "V1 (boundary)", err.to_string())
            })?;
            if fb != self.boundary {
                return Err(fail(
                    label,
                    "V1 (boundary)",
                    format!("image of the boundary is {fb}"),
                ));
            }
            let ib = e.inv.apply(&self.boundary).map_err(|err| {
                fail(label, "V1 (boundary)", err.to_string())
            })?;
            if ib != self.boundary {
                return Err(fail(
                    label,
                    "V1 (boundary, inverse)",
                    format!("image of the boundary is {ib}"),
                ));
            }
            let both = e
                .fwd
                .compose(&e.inv)
                .and_then(|c| Ok((c.is_identity(), e.inv.compose(&e.fwd)?.is_identity())))
                .map_err(|err| fail(label, "V1 (inverse)", err.to_string()))?;
            if !both.0 || !both.1 {
                return Err(fail(
                    label,
                    "V1 (inverse)",
                    "stored inverse does not invert the entry".into(),
                ));
            }
            let ab = e.fwd.abelianize().map_err(|err| fail(label, "V2", err.to_string()))?;
            if ab != transvection_power(&e.class, 1) {
                return Err(fail(
                    label,
                    "V2 (transvection)",
                    "abelianization is not the transvection of the declared class".into(),
                ));
            }
            let abi = e.inv.abelianize().map_err(|err| fail(label, "V2", err.to_string()))?;
            if abi != transvection_power(&e.class, -1) {
                return Err(fail(
                    label,
                    "V2 (transvection, inverse)",
                    "abelianization is not the inverse transvection".into(),
                ));
            }
        }
        for rel in crate::catalog::m_relators(self.genus) {
            let check = match rel.tag.as_str() {
                "M1" => "V3 (chain relations)",
                "M2" => "V4 (genus-2 relation)",
                _ => "V5 (lantern-type relation)",
            };
            let diff = rel
                .lhs
                .concat(&rel.rhs.invert())
                .map_err(|err| fail(&rel.id, check, err.to_string()))?;
            let endo = self
                .evaluate_word(&diff)
                .map_err(|err| fail(&rel.id, check, err.to_string()))?;
            if !endo.is_identity() {
                return Err(fail(
                    &rel.id,
                    check,
                    format!("relator `{}` = `{}` does not hold", rel.lhs, rel.rhs),
                ));
            }
        }
        Ok(())
    }

    /// Parses a table from its text form and validates it.
    ///
    /// One entry per line: `gen <label> ; h <2g ints> ; x1 -> <word> ; ...`.
    /// Unlisted basis letters map to themselves; inverses are computed by
    /// Nielsen reduction. Blank lines and `#` comments are skipped.
    pub fn load(text: &str) -> Result<TwistTable, TableError> {
        struct RawEntry {
            label: String,
            class: Vec<i64>,
            images: Vec<(String, String)>,
            line: usize,
        }
        let mut raws: Vec<RawEntry> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| TableError::Parse { line: lineno, msg };
            let mut fields = line.split(';').map(str::trim);
            let head = fields.next().unwrap_or("");
            let label = head
                .strip_prefix("gen ")
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| perr("expected `gen <label>`".into()))?;
            let hfield = fields
                .next()
                .ok_or_else(|| perr("missing `h <ints>` field".into()))?;
            let hbody = hfield
                .strip_prefix("h ")
                .or_else(|| hfield.strip_prefix("h\t"))
                .ok_or_else(|| perr("expected `h <ints>`".into()))?;
            let class = hbody
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| perr(format!("bad class coefficient: {e}")))?;
            if class.is_empty() || class.len() % 2 != 0 {
                return Err(perr(format!(
                    "class vector must have positive even length, got {}",
                    class.len()
                )));
            }
            let mut images = Vec::new();
            for f in fields {
                if f.is_empty() {
                    continue;
                }
                let (name, expr) = f
                    .split_once("->")
                    .ok_or_else(|| perr(format!("expected `<name> -> <word>`, got `{f}`")))?;
                images.push((name.trim().to_string(), expr.trim().to_string()));
            }
            raws.push(RawEntry {
                label: label.to_string(),
                class,
                images,
                line: lineno,
            });
        }
        if raws.is_empty() {
            return Err(TableError::Parse {
                line: 0,
                msg: "no entries".into(),
            });
        }
        let n = raws[0].class.len();
        let genus = n / 2;
        let pi1 = pi1_alphabet(genus);
        let mut labels = Vec::new();
        let mut entries = HashMap::new();
        for raw in raws {
            let perr = |msg: String| TableError::Parse { line: raw.line, msg };
            if raw.class.len() != n {
                return Err(perr(format!(
                    "class vector length {} disagrees with genus {genus}",
                    raw.class.len()
                )));
            }
            if entries.contains_key(&raw.label) {
                return Err(perr(format!("duplicate entry `{}`", raw.label)));
            }
            let mut images: Vec<Word> = (0..n)
                .map(|i| Word::from_reduced_unchecked(&pi1, vec![(i + 1) as i32]))
                .collect();
            for (name, expr) in &raw.images {
                let idx = pi1
                    .index_of(name)
                    .ok_or_else(|| perr(format!("`{name}` is not a basis letter")))?;
                images[idx] = Word::parse(&pi1, expr)
                    .map_err(|e| perr(format!("image of `{name}`: {e}")))?;
            }
            let fwd = Endo {
                abc: Arc::clone(&pi1),
                images,
            };
            let inv = fwd.invert().map_err(|e| TableError::Validation {
                entry: raw.label.clone(),
                check: "inversion".into(),
                detail: e.to_string(),
            })?;
            let class = HomologyClass::new(raw.class).expect("checked even");
            labels.push(raw.label.clone());
            entries.insert(raw.label, TableEntry { fwd, inv, class });
        }
        let boundary = boundary_word(&pi1);
        let table = TwistTable {
            genus,
            pi1,
            labels,
            entries,
            boundary,
        };
        table.validate()?;
        Ok(table)
    }

    /// Renders the table in the format accepted by [`TwistTable::load`].
    pub fn save_text(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            let e = &self.entries[label];
            out.push_str(&format!("gen {label} ; h"));
            for c in e.class.coeffs() {
                out.push_str(&format!(" {c}"));
            }
            for (i, im) in e.fwd.images().iter().enumerate() {
                out.push_str(&format!(" ; {} -> {}", self.pi1.name(i), im));
            }
            out.push('\n');
        }
        out
    }
}
