//! Freely reduced words over a finite alphabet.
//!
//! A [`Word`] stores a sequence of signed generator codes and is kept freely
//! reduced at all times: no generator is ever adjacent to its inverse. All
//! constructors and group operations maintain this invariant, so equality of
//! words is equality in the free group.
//!
//! Words can be built from an expression grammar (see [`Word::parse`]):
//!
//! * a generator name is a word; `1` is the empty word;
//! * juxtaposition (whitespace) multiplies; `w'` and `w^n` invert and raise
//!   to a power, binding tighter than juxtaposition;
//! * `u * v` is the conjugate `u v u^-1`; it binds loosest and associates to
//!   the left;
//! * parentheses group.
//!
//! Generator names of the shape `d(i,j)` with signed integer arguments are
//! lexed as a single name, so alphabets may contain such labels.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

/// Default cap on the length of any reduced word.
pub const DEFAULT_MAX_WORD_LEN: usize = 1_000_000;

/// Maximum permitted length of a reduced word.
///
/// Read once from the environment variable `MCGKIT_MAX_WORD_LEN`; values
/// that are missing, unparsable, or zero fall back to
/// [`DEFAULT_MAX_WORD_LEN`]. Operations whose result would exceed the cap
/// fail with [`WordError::LengthGuard`] instead of allocating further.
pub fn max_word_len() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("MCGKIT_MAX_WORD_LEN")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(DEFAULT_MAX_WORD_LEN)
    })
}

/// Errors produced by word construction and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    /// A name in an expression is not a generator of the alphabet.
    UnknownGenerator { name: String, pos: usize },
    /// The expression violates the grammar.
    Parse { msg: String, pos: usize },
    /// A result would exceed [`max_word_len`].
    LengthGuard { len: usize, max: usize },
    /// Two words over different alphabets were combined.
    AlphabetMismatch,
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::UnknownGenerator { name, pos } => {
                write!(f, "unknown generator `{name}` at position {pos}")
            }
            WordError::Parse { msg, pos } => write!(f, "parse error at position {pos}: {msg}"),
            WordError::LengthGuard { len, max } => {
                write!(f, "word length {len} exceeds the configured maximum {max}")
            }
            WordError::AlphabetMismatch => write!(f, "words belong to different alphabets"),
        }
    }
}

impl std::error::Error for WordError {}

/// A finite ordered set of generator names.
///
/// Each generator has a positive code `1..=rank`; the inverse of code `c` is
/// `-c`. Alphabets are shared behind [`Arc`] and compared by name list.
#[derive(Debug)]
pub struct Alphabet {
    names: Vec<String>,
    codes: HashMap<String, i32>,
}

impl Alphabet {
    /// Builds an alphabet from an ordered list of names.
    ///
    /// Panics on an empty list, an empty name, or a duplicate name; alphabets
    /// are constructed from trusted tables, so this is a programming error.
    /// Use [`Alphabet::try_new`] for data read from files.
    pub fn new<I, S>(names: I) -> Arc<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Alphabet::try_new(names).expect("invalid alphabet")
    }

    /// Fallible variant of [`Alphabet::new`].
    pub fn try_new<I, S>(names: I) -> Result<Arc<Alphabet>, String>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err("alphabet must have at least one generator".into());
        }
        let mut codes = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(format!("generator {i} has an empty name"));
            }
            if codes.insert(n.clone(), (i + 1) as i32).is_some() {
                return Err(format!("duplicate generator name `{n}`"));
            }
        }
        Ok(Arc::new(Alphabet { names, codes }))
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// All generator names in order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of the generator with 0-based index `index`.
    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    /// Positive code of a generator, if present.
    pub fn code_of(&self, name: &str) -> Option<i32> {
        self.codes.get(name).copied()
    }

    /// 0-based index of a generator, if present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.codes.get(name).map(|&c| (c - 1) as usize)
    }
}

/// Whether two alphabet handles denote the same alphabet.
pub fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// A single signed letter: generator `index` (0-based) with `sign` `+1`/`-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: i8,
}

impl Letter {
    fn code(self) -> i32 {
        let c = (self.index + 1) as i32;
        if self.sign < 0 {
            -c
        } else {
            c
        }
    }

    fn from_code(code: i32) -> Letter {
        Letter {
            index: (code.unsigned_abs() - 1) as usize,
            sign: if code < 0 { -1 } else { 1 },
        }
    }
}

/// Pushes a signed code onto a reduced buffer, cancelling with the last
/// letter when the pair is inverse.
#[inline]
pub(crate) fn push_reduced(buf: &mut Vec<i32>, code: i32) {
    if let Some(&last) = buf.last() {
        if last == -code {
            buf.pop();
            return;
        }
    }
    buf.push(code);
}

fn guard_len(len: usize) -> Result<(), WordError> {
    let max = max_word_len();
    if len > max {
        Err(WordError::LengthGuard { len, max })
    } else {
        Ok(())
    }
}

/// A freely reduced word over an [`Alphabet`].
#[derive(Debug, Clone)]
pub struct Word {
    abc: Arc<Alphabet>,
    letters: Vec<i32>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        same_alphabet(&self.abc, &other.abc) && self.letters == other.letters
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl Word {
    /// The empty word.
    pub fn identity(abc: &Arc<Alphabet>) -> Word {
        Word {
            abc: Arc::clone(abc),
            letters: Vec::new(),
        }
    }

    /// The one-letter word for a named generator.
    pub fn generator(abc: &Arc<Alphabet>, name: &str) -> Result<Word, WordError> {
        let code = abc.code_of(name).ok_or_else(|| WordError::UnknownGenerator {
            name: name.to_string(),
            pos: 0,
        })?;
        Ok(Word {
            abc: Arc::clone(abc),
            letters: vec![code],
        })
    }

    /// Builds a word from signed codes, reducing as it goes.
    ///
    /// Codes must be nonzero with `|code| <= rank`.
    pub fn from_codes<I>(abc: &Arc<Alphabet>, codes: I) -> Result<Word, WordError>
    where
        I: IntoIterator<Item = i32>,
    {
        let rank = abc.rank() as i32;
        let mut letters = Vec::new();
        for c in codes {
            if c == 0 || c.abs() > rank {
                return Err(WordError::UnknownGenerator {
                    name: format!("#{c}"),
                    pos: 0,
                });
            }
            push_reduced(&mut letters, c);
            guard_len(letters.len())?;
        }
        Ok(Word {
            abc: Arc::clone(abc),
            letters,
        })
    }

    /// Builds a word from [`Letter`]s, reducing as it goes.
    pub fn from_letters<I>(abc: &Arc<Alphabet>, letters: I) -> Result<Word, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        Word::from_codes(abc, letters.into_iter().map(Letter::code))
    }

    /// Wraps an already-reduced code sequence without checks (internal fast
    /// path for operations that maintain reduction themselves).
    pub(crate) fn from_reduced_unchecked(abc: &Arc<Alphabet>, letters: Vec<i32>) -> Word {
        debug_assert!(letters.windows(2).all(|p| p[0] != -p[1]));
        Word {
            abc: Arc::clone(abc),
            letters,
        }
    }

    /// The alphabet this word is over.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.abc
    }

    /// The reduced letter sequence as signed codes.
    pub fn codes(&self) -> &[i32] {
        &self.letters
    }

    /// Iterator over the letters as `(index, sign)` pairs.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().map(|&c| Letter::from_code(c))
    }

    /// Length of the reduced word.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Whether this is the empty word.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether this is the identity (same as [`Word::is_empty`]).
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product `self · other`, freely reduced.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if !same_alphabet(&self.abc, &other.abc) {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        for &c in &other.letters {
            push_reduced(&mut letters, c);
        }
        guard_len(letters.len())?;
        Ok(Word {
            abc: Arc::clone(&self.abc),
            letters,
        })
    }

    /// Inverse word: letters reversed with signs flipped.
    pub fn invert(&self) -> Word {
        Word {
            abc: Arc::clone(&self.abc),
            letters: self.letters.iter().rev().map(|&c| -c).collect(),
        }
    }

    /// Conjugate `self · other · self^-1`.
    pub fn conjugate(&self, other: &Word) -> Result<Word, WordError> {
        self.concat(other)?.concat(&self.invert())
    }

    /// Commutator `self · other · self^-1 · other^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word, WordError> {
        self.conjugate(other)?.concat(&other.invert())
    }

    /// Power `self^n`; negative exponents use the inverse.
    pub fn power(&self, n: i64) -> Result<Word, WordError> {
        if n == 0 || self.is_identity() {
            return Ok(Word::identity(&self.abc));
        }
        let base = if n < 0 { self.invert() } else { self.clone() };
        let reps = n.unsigned_abs();
        // A nontrivial word has a nontrivial cyclically reduced core, so the
        // power grows at least linearly in the exponent; refuse hopeless
        // exponents before looping.
        let max = max_word_len();
        if reps > (max + 2 * base.len()) as u64 {
            return Err(WordError::LengthGuard { len: usize::MAX, max });
        }
        let mut buf: Vec<i32> = Vec::with_capacity(base.len());
        for _ in 0..reps {
            for &c in base.codes() {
                push_reduced(&mut buf, c);
            }
            guard_len(buf.len())?;
        }
        Ok(Word::from_reduced_unchecked(&self.abc, buf))
    }

    /// Canonical text form: space-separated letters, `'` marking inverses,
    /// `1` for the empty word. [`Word::parse`] accepts this form verbatim.
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (k, &c) in self.letters.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(self.abc.name((c.unsigned_abs() - 1) as usize));
            if c < 0 {
                out.push('\'');
            }
        }
        out
    }

    /// Parses an expression over `abc`; see the module docs for the grammar.
    pub fn parse(abc: &Arc<Alphabet>, text: &str) -> Result<Word, WordError> {
        let tokens = lex(text)?;
        let mut p = Parser {
            abc,
            tokens: &tokens,
            at: 0,
        };
        let w = p.parse_expr()?;
        match p.peek() {
            None => Ok(w),
            Some(t) => Err(WordError::Parse {
                msg: format!("unexpected `{}`", t.kind.describe()),
                pos: t.pos,
            }),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Name(String),
    One,
    LPar,
    RPar,
    Star,
    Prime,
    Caret(i64),
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::Name(n) => n.clone(),
            TokKind::One => "1".into(),
            TokKind::LPar => "(".into(),
            TokKind::RPar => ")".into(),
            TokKind::Star => "*".into(),
            TokKind::Prime => "'".into(),
            TokKind::Caret(n) => format!("^{n}"),
        }
    }
}

#[derive(Debug)]
struct Token {
    kind: TokKind,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, WordError> {
    let b = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let pos = i;
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'(' => {
                toks.push(Token { kind: TokKind::LPar, pos });
                i += 1;
            }
            b')' => {
                toks.push(Token { kind: TokKind::RPar, pos });
                i += 1;
            }
            b'*' => {
                toks.push(Token { kind: TokKind::Star, pos });
                i += 1;
            }
            b'\'' => {
                toks.push(Token { kind: TokKind::Prime, pos });
                i += 1;
            }
            b'^' => {
                i += 1;
                let start = i;
                if i < b.len() && (b[i] == b'-' || b[i] == b'+') {
                    i += 1;
                }
                let digits = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits {
                    return Err(WordError::Parse {
                        msg: "expected an integer exponent after `^`".into(),
                        pos,
                    });
                }
                let n: i64 = text[start..i].parse().map_err(|_| WordError::Parse {
                    msg: "exponent out of range".into(),
                    pos,
                })?;
                toks.push(Token { kind: TokKind::Caret(n), pos });
            }
            b'1' => {
                toks.push(Token { kind: TokKind::One, pos });
                i += 1;
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                let name = &text[start..i];
                // A bare `d` followed by `(int,int)` is a single indexed
                // name, normalized to `d(i,j)` without spaces.
                if name == "d" && i < b.len() && b[i] == b'(' {
                    if let Some((label, next)) = scan_indexed(text, i) {
                        toks.push(Token {
                            kind: TokKind::Name(label),
                            pos: start,
                        });
                        i = next;
                        continue;
                    }
                }
                toks.push(Token {
                    kind: TokKind::Name(name.to_string()),
                    pos: start,
                });
            }
            _ => {
                return Err(WordError::Parse {
                    msg: format!("unexpected character `{}`", &text[pos..][..1]),
                    pos,
                });
            }
        }
    }
    Ok(toks)
}

/// Scans `(i,j)` with signed integers starting at the `(` at byte `open`.
/// Returns the normalized label and the byte offset just past `)`.
fn scan_indexed(text: &str, open: usize) -> Option<(String, usize)> {
    let b = text.as_bytes();
    let mut i = open + 1;
    let read_int = |i: &mut usize| -> Option<i64> {
        while *i < b.len() && (b[*i] == b' ' || b[*i] == b'\t') {
            *i += 1;
        }
        let start = *i;
        if *i < b.len() && b[*i] == b'-' {
            *i += 1;
        }
        let digits = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == digits {
            return None;
        }
        let n: i64 = text[start..*i].parse().ok()?;
        while *i < b.len() && (b[*i] == b' ' || b[*i] == b'\t') {
            *i += 1;
        }
        Some(n)
    };
    let first = read_int(&mut i)?;
    if i >= b.len() || b[i] != b',' {
        return None;
    }
    i += 1;
    let second = read_int(&mut i)?;
    if i >= b.len() || b[i] != b')' {
        return None;
    }
    Some((format!("d({first},{second})"), i + 1))
}

struct Parser<'a> {
    abc: &'a Arc<Alphabet>,
    tokens: &'a [Token],
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn end_pos(&self) -> usize {
        self.tokens.last().map(|t| t.pos + 1).unwrap_or(0)
    }

    /// expr := seq (`*` seq)*, conjugation, left-associative.
    fn parse_expr(&mut self) -> Result<Word, WordError> {
        let mut w = self.parse_seq()?;
        while matches!(self.peek(), Some(t) if t.kind == TokKind::Star) {
            self.at += 1;
            let rhs = self.parse_seq()?;
            w = w.conjugate(&rhs)?;
        }
        Ok(w)
    }

    /// seq := factor+, juxtaposition.
    fn parse_seq(&mut self) -> Result<Word, WordError> {
        let mut w = match self.peek() {
            Some(t) if Self::starts_atom(&t.kind) => self.parse_factor()?,
            Some(t) => {
                return Err(WordError::Parse {
                    msg: format!("expected a word, found `{}`", t.kind.describe()),
                    pos: t.pos,
                })
            }
            None => {
                return Err(WordError::Parse {
                    msg: "expected a word".into(),
                    pos: self.end_pos(),
                })
            }
        };
        while matches!(self.peek(), Some(t) if Self::starts_atom(&t.kind)) {
            let f = self.parse_factor()?;
            w = w.concat(&f)?;
        }
        Ok(w)
    }

    fn starts_atom(kind: &TokKind) -> bool {
        matches!(kind, TokKind::Name(_) | TokKind::One | TokKind::LPar)
    }

    /// factor := atom (`'` | `^n`)*.
    fn parse_factor(&mut self) -> Result<Word, WordError> {
        let mut w = self.parse_atom()?;
        loop {
            match self.peek() {
                Some(t) if t.kind == TokKind::Prime => {
                    self.at += 1;
                    w = w.invert();
                }
                Some(t) => {
                    if let TokKind::Caret(n) = t.kind {
                        self.at += 1;
                        w = w.power(n)?;
                    } else {
                        break;
                    }
                }
                None => break,
            }
        }
        Ok(w)
    }

    /// atom := `1` | name | `(` expr `)`.
    fn parse_atom(&mut self) -> Result<Word, WordError> {
        let t = self.tokens.get(self.at).ok_or_else(|| WordError::Parse {
            msg: "expected a word".into(),
            pos: self.end_pos(),
        })?;
        match &t.kind {
            TokKind::One => {
                self.at += 1;
                Ok(Word::identity(self.abc))
            }
            TokKind::Name(name) => {
                let code = self
                    .abc
                    .code_of(name)
                    .ok_or_else(|| WordError::UnknownGenerator {
                        name: name.clone(),
                        pos: t.pos,
                    })?;
                self.at += 1;
                Ok(Word {
                    abc: Arc::clone(self.abc),
                    letters: vec![code],
                })
            }
            TokKind::LPar => {
                self.at += 1;
                let w = self.parse_expr()?;
                match self.peek() {
                    Some(t) if t.kind == TokKind::RPar => {
                        self.at += 1;
                        Ok(w)
                    }
                    Some(t) => Err(WordError::Parse {
                        msg: format!("expected `)`, found `{}`", t.kind.describe()),
                        pos: t.pos,
                    }),
                    None => Err(WordError::Parse {
                        msg: "unclosed `(`".into(),
                        pos: self.end_pos(),
                    }),
                }
            }
            other => Err(WordError::Parse {
                msg: format!("expected a word, found `{}`", other.describe()),
                pos: t.pos,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn abc() -> Arc<Alphabet> {
        Alphabet::new(["b2", "b1", "a1", "e1", "a2", "d(1,2)", "d(-2,1)"])
    }

    fn w(text: &str) -> Word {
        Word::parse(&abc(), text).unwrap()
    }

    #[test]
    fn concat_cancels_across_the_seam() {
        let u = w("a1 b1");
        let v = w("b1' e1");
        assert_eq!(u.concat(&v).unwrap(), w("a1 e1"));
    }

    #[test]
    fn invert_reverses_and_flips_signs() {
        assert_eq!(w("a1 b1 e1'").invert(), w("e1 b1' a1'"));
        assert!(w("1").invert().is_identity());
    }

    #[test]
    fn conjugate_and_commutator_shapes() {
        let b = w("b1");
        let a = w("a1");
        assert_eq!(b.conjugate(&a).unwrap(), w("b1 a1 b1'"));
        assert_eq!(b.commutator(&a).unwrap(), w("b1 a1 b1' a1'"));
        let x = w("a1 b1");
        assert!(x.conjugate(&x).unwrap() == x);
    }

    #[test]
    fn power_handles_signs_and_zero() {
        let x = w("a1 b1");
        assert!(x.power(0).unwrap().is_identity());
        assert_eq!(x.power(3).unwrap(), w("a1 b1 a1 b1 a1 b1"));
        assert_eq!(x.power(-2).unwrap(), w("b1' a1' b1' a1'"));
        assert_eq!(w("b1 a1 e1 a2").power(5).unwrap().len(), 20);
    }

    #[test]
    fn words_stay_reduced() {
        assert!(w("a1 a1'").is_identity());
        assert_eq!(w("a1 b1 b1' a1"), w("a1 a1"));
        let u = w("a1 b1 e1");
        assert!(u.concat(&u.invert()).unwrap().is_identity());
    }

    #[test]
    fn parse_grammar_examples() {
        assert_eq!(w("b1*a1"), w("b1 a1 b1'"));
        assert_eq!(w("(a1 b1)^2"), w("a1 b1 a1 b1"));
        assert_eq!(w("a1 b1^2"), w("a1 b1 b1"));
        assert_eq!(w("a1^-1"), w("a1'"));
        assert_eq!(w("a1''"), w("a1"));
        // `*` binds loosest: both sides are full juxtaposition sequences.
        assert_eq!(w("a1 b1 * e1 a2"), w("a1 b1 e1 a2 b1' a1'"));
        // and it associates to the left.
        assert_eq!(w("a1*b1*e1"), w("a1*b1").conjugate(&w("e1")).unwrap());
        assert_eq!(w("(b2 a2)'"), w("a2' b2'"));
        assert!(w("1").is_identity());
        assert_eq!(w("1 a1 1"), w("a1"));
    }

    #[test]
    fn parse_indexed_names() {
        assert_eq!(w("d(1,2)"), w("d( 1 , 2 )"));
        assert_eq!(w("d(-2,1)'").invert(), w("d(-2,1)"));
        let v = w("d(1,2) d(-2,1)");
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Word::parse(&abc(), "a1 zz b1") {
            Err(WordError::UnknownGenerator { name, pos }) => {
                assert_eq!(name, "zz");
                assert_eq!(pos, 3);
            }
            other => panic!("expected unknown generator, got {other:?}"),
        }
        match Word::parse(&abc(), "a1 )") {
            Err(WordError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Word::parse(&abc(), "(a1 b1").is_err());
        assert!(Word::parse(&abc(), "a1 ^").is_err());
        assert!(Word::parse(&abc(), "").is_err());
    }

    #[test]
    fn render_parse_round_trip() {
        let samples = [
            "1",
            "a1",
            "a1' b1 d(1,2)' e1 e1 b2'",
            "d(-2,1) d(1,2)'",
        ];
        for s in samples {
            let u = w(s);
            assert_eq!(Word::parse(&abc(), &u.render()).unwrap(), u);
            assert_eq!(u.render(), w(&u.render()).render());
        }
    }

    #[test]
    fn random_words_obey_group_laws() {
        let abc = abc();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rank = abc.rank() as i32;
        let random_word = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(0..30);
            let codes: Vec<i32> = (0..n)
                .map(|_| {
                    let c = rng.gen_range(1..=rank);
                    if rng.gen_bool(0.5) {
                        -c
                    } else {
                        c
                    }
                })
                .collect();
            Word::from_codes(&abc, codes).unwrap()
        };
        for _ in 0..500 {
            let u = random_word(&mut rng);
            let v = random_word(&mut rng);
            let t = random_word(&mut rng);
            assert!(u.concat(&u.invert()).unwrap().is_identity());
            let uv_t = u.concat(&v).unwrap().concat(&t).unwrap();
            let u_vt = u.concat(&v.concat(&t).unwrap()).unwrap();
            assert_eq!(uv_t, u_vt);
            // Free reduction removes letters in pairs.
            assert_eq!(uv_t.len() % 2, (u.len() + v.len() + t.len()) % 2);
            assert_eq!(
                u.concat(&v).unwrap().invert(),
                v.invert().concat(&u.invert()).unwrap()
            );
            let round = Word::parse(&abc, &u.render()).unwrap();
            assert_eq!(round, u);
        }
    }

    #[test]
    fn length_guard_rejects_runaway_powers() {
        let a = w("a1");
        let max = max_word_len() as i64;
        match a.power(max + 1) {
            Err(WordError::LengthGuard { .. }) => {}
            other => panic!("expected length guard, got {other:?}"),
        }
        // Hopeless exponents fail fast instead of looping.
        match a.power(i64::MAX) {
            Err(WordError::LengthGuard { .. }) => {}
            other => panic!("expected length guard, got {other:?}"),
        }
    }

    #[test]
    fn alphabet_mismatch_is_detected() {
        let other = Alphabet::new(["x", "y"]);
        let u = w("a1");
        let v = Word::generator(&other, "x").unwrap();
        assert_eq!(u.concat(&v), Err(WordError::AlphabetMismatch));
        // Equal name lists make interchangeable alphabets.
        let clone = Alphabet::new(["b2", "b1", "a1", "e1", "a2", "d(1,2)", "d(-2,1)"]);
        let u2 = Word::parse(&clone, "a1").unwrap();
        assert_eq!(u, u2);
    }
}
