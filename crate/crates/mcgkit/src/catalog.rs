//! Named twist words, relator families, presentations, and fixtures.
//!
//! The mapping class group of a genus-`g` surface with one boundary
//! component is generated by the chain twists `b2, b1, a1, e1, a2, e2, ...,
//! a_g`. On top of these the catalog defines the composite twist words that
//! the presentations and test suites use:
//!
//! * `s`, `r`: the genus-one words `b1 a1 a1 b1` and `a1 b1 a1`;
//! * `t1..t(g-1)`: `t_i = e_i a_i a_(i+1) e_i`;
//! * `d(i,j)`: twists about curves through handles `|i|` and `|j|`, indexed
//!   by pairs `i < j` from `I0 = {-g..-1, 1..g}`, entering a handle from the
//!   front or the back according to the sign;
//! * `k1..k6`, `d3`, `dg`, `tt1..tt(g-1)`, `dtilde3`, `dtildeg`, `u_i`,
//!   `v_i`, `w0`, `w1`, `w2`: auxiliary words used by the closed-surface
//!   and alternative presentations (`tt`/`dtilde` spell the tilde names).
//!
//! A [`Catalog`] is built per genus; [`Catalog::expand_symbol`] yields the
//! word of any label in the chain generators, and [`Catalog::presentation`]
//! assembles the shipped presentations. Fixture suites mirror, relation by
//! relation, the auxiliary identities the verification suites check.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::word::{Alphabet, Word, WordError};

/// Errors from catalog construction and lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogError {
    UnsupportedGenus { what: String, genus: usize },
    UnknownSymbol { name: String },
    UnknownPresentation { name: String },
    UnknownSuite { name: String },
    BadIndexPair { i: i32, j: i32, genus: usize },
    Word(WordError),
    Parse { line: usize, msg: String },
}

impl From<WordError> for CatalogError {
    fn from(e: WordError) -> Self {
        CatalogError::Word(e)
    }
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnsupportedGenus { what, genus } => {
                write!(f, "`{what}` is not defined at genus {genus}")
            }
            CatalogError::UnknownSymbol { name } => write!(f, "unknown symbol `{name}`"),
            CatalogError::UnknownPresentation { name } => {
                write!(f, "unknown presentation `{name}`")
            }
            CatalogError::UnknownSuite { name } => write!(f, "unknown suite `{name}`"),
            CatalogError::BadIndexPair { i, j, genus } => {
                write!(f, "({i},{j}) is not an ordered index pair at genus {genus}")
            }
            CatalogError::Word(e) => write!(f, "{e}"),
            CatalogError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
        }
    }
}

impl std::error::Error for CatalogError {}

/// A defining relation `lhs = rhs`, with a family tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub id: String,
    pub lhs: Word,
    pub rhs: Word,
    pub tag: String,
}

/// A named presentation: generators and relators.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub genus: usize,
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

/// Expected outcome of checking a relator in one representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Holds,
    Fails,
    /// Not meaningful in this representation.
    Skip,
}

/// A fixture relation: a relator plus the genus it first exists at and the
/// expected outcome per representation.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub relator: Relator,
    pub min_genus: usize,
    pub pi1: Expectation,
    pub sp: Expectation,
}

impl Fixture {
    fn exact(relator: Relator, min_genus: usize) -> Fixture {
        Fixture {
            relator,
            min_genus,
            pi1: Expectation::Holds,
            sp: Expectation::Holds,
        }
    }

    fn sp_only(relator: Relator, min_genus: usize) -> Fixture {
        Fixture {
            relator,
            min_genus,
            pi1: Expectation::Skip,
            sp: Expectation::Holds,
        }
    }

    fn homology_only(relator: Relator, min_genus: usize) -> Fixture {
        Fixture {
            relator,
            min_genus,
            pi1: Expectation::Fails,
            sp: Expectation::Holds,
        }
    }
}

/// The index set `I0 = {-g, ..., -1, 1, ..., g}` in order.
pub fn index_set(genus: usize) -> Vec<i32> {
    let g = genus as i32;
    (-g..=g).filter(|&m| m != 0).collect()
}

/// An ordered pair `i < j` of nonzero indices with `|i|, |j| <= g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    pub i: i32,
    pub j: i32,
}

impl IndexPair {
    pub fn new(i: i32, j: i32, genus: usize) -> Result<IndexPair, CatalogError> {
        let g = genus as i32;
        if i == 0 || j == 0 || i >= j || i < -g || j > g {
            return Err(CatalogError::BadIndexPair { i, j, genus });
        }
        Ok(IndexPair { i, j })
    }

    fn of(i: i32, j: i32) -> IndexPair {
        if i < j {
            IndexPair { i, j }
        } else {
            IndexPair { i: j, j: i }
        }
    }

    /// The catalog label `d(i,j)`.
    pub fn label(&self) -> String {
        format!("d({},{})", self.i, self.j)
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// All ordered pairs from `I0`, in index-set order.
pub fn index_pairs(genus: usize) -> Vec<IndexPair> {
    let i0 = index_set(genus);
    let mut out = Vec::new();
    for a in 0..i0.len() {
        for b in a + 1..i0.len() {
            out.push(IndexPair { i: i0[a], j: i0[b] });
        }
    }
    out
}

/// Operations acting on index pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexOp {
    /// `t_k` or its inverse.
    T { k: usize, sign: i8 },
    /// `s` or its inverse.
    S { sign: i8 },
    /// The composite `t_k^-1 d(k,k+1)`.
    Td { k: usize },
}

impl fmt::Display for IndexOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexOp::T { k, sign } => write!(f, "t{k}{}", if *sign < 0 { "'" } else { "" }),
            IndexOp::S { sign } => write!(f, "s{}", if *sign < 0 { "'" } else { "" }),
            IndexOp::Td { k } => write!(f, "t{k}'d({k},{})", k + 1),
        }
    }
}

/// Result of letting an operation act on an index pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMove {
    Pair(IndexPair),
    /// The conjugate is not a `d(i,j)` generator; no proper move exists.
    Blocked,
}

/// How conjugation by an operation permutes the `d(i,j)` family.
///
/// Proper moves are exactly those for which `op * d(pair) = d(image)` holds
/// in the mapping class group; blocked cases land outside the family.
pub fn index_action(op: IndexOp, pair: IndexPair) -> IndexMove {
    let (i, j) = (pair.i, pair.j);
    match op {
        IndexOp::T { k, sign } => {
            let k = k as i32;
            if (i, j) == (k, k + 1) || (i, j) == (-k - 1, -k) {
                return IndexMove::Pair(pair);
            }
            let touches = |m: i32| m == k || m == k + 1 || m == -k || m == -k - 1;
            if !touches(i) && !touches(j) {
                return IndexMove::Pair(pair);
            }
            if sign > 0 && (i, j) == (-k - 1, k) {
                return IndexMove::Pair(IndexPair { i: -k, j: k + 1 });
            }
            if sign < 0 && (i, j) == (-k, k + 1) {
                return IndexMove::Pair(IndexPair { i: -k - 1, j: k });
            }
            let forb = if sign > 0 { [k + 1, -k] } else { [k, -k - 1] };
            if forb.contains(&i) || forb.contains(&j) {
                return IndexMove::Blocked;
            }
            let sig = |m: i32| {
                if m == k {
                    k + 1
                } else if m == k + 1 {
                    k
                } else if m == -k {
                    -k - 1
                } else if m == -k - 1 {
                    -k
                } else {
                    m
                }
            };
            IndexMove::Pair(IndexPair::of(sig(i), sig(j)))
        }
        IndexOp::S { sign } => {
            if (i, j) == (-1, 1) {
                return IndexMove::Pair(pair);
            }
            if i.abs() != 1 && j.abs() != 1 {
                return IndexMove::Pair(pair);
            }
            if sign > 0 {
                if i == 1 || j == 1 {
                    return IndexMove::Blocked;
                }
                let f = |m: i32| if m == -1 { 1 } else { m };
                IndexMove::Pair(IndexPair::of(f(i), f(j)))
            } else {
                if i == -1 || j == -1 {
                    return IndexMove::Blocked;
                }
                let f = |m: i32| if m == 1 { -1 } else { m };
                IndexMove::Pair(IndexPair::of(f(i), f(j)))
            }
        }
        IndexOp::Td { k } => {
            let k = k as i32;
            if (i, j) == (k, k + 1) || (i, j) == (-k - 1, -k) {
                return IndexMove::Pair(pair);
            }
            if i == k + 1 || j == k + 1 || i == -k - 1 || j == -k - 1 {
                return IndexMove::Blocked;
            }
            if (i, j) == (-k, k) {
                return IndexMove::Pair(IndexPair { i: -k - 1, j: k + 1 });
            }
            let f = |m: i32| {
                if m == k {
                    k + 1
                } else if m == -k {
                    -k - 1
                } else {
                    m
                }
            };
            IndexMove::Pair(IndexPair::of(f(i), f(j)))
        }
    }
}

/// The chain generators in presentation order: `b2` (genus >= 2), then
/// `b1, a1, e1, a2, e2, ..., a_g`.
pub fn m_generators(genus: usize) -> Vec<String> {
    assert!(genus >= 1, "genus must be at least 1");
    let mut out = Vec::with_capacity(2 * genus + 1);
    if genus >= 2 {
        out.push("b2".into());
    }
    out.push("b1".into());
    for i in 1..=genus {
        out.push(format!("a{i}"));
        if i < genus {
            out.push(format!("e{i}"));
        }
    }
    out
}

/// The chain without `b2`: `b1, a1, e1, a2, ..., a_g`.
fn chain(genus: usize) -> Vec<String> {
    let mut out = vec!["b1".to_string()];
    for i in 1..=genus {
        out.push(format!("a{i}"));
        if i < genus {
            out.push(format!("e{i}"));
        }
    }
    out
}

/// Generator pairs of the chain presentation with their braiding flag.
///
/// Consecutive chain generators are braided, `b2` is braided with `a2`
/// only, and every other pair commutes.
pub fn m1_pairs(genus: usize) -> Vec<(String, String, bool)> {
    let gens = m_generators(genus);
    let chain_list = chain(genus);
    let pos: HashMap<&str, usize> = chain_list
        .iter()
        .enumerate()
        .map(|(k, s)| (s.as_str(), k))
        .collect();
    let mut out = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            let (x, y) = (&gens[a], &gens[b]);
            let braided = if x == "b2" || y == "b2" {
                let other = if x == "b2" { y } else { x };
                other == "a2"
            } else {
                let (px, py) = (pos[x.as_str()], pos[y.as_str()]);
                px.abs_diff(py) == 1
            };
            out.push((x.clone(), y.clone(), braided));
        }
    }
    out
}

/// The chain-presentation relators at a genus: the braiding/commutation
/// family, the genus-2 relation (genus >= 2), and the lantern-type relation
/// (genus >= 3), over the alphabet of [`m_generators`].
pub fn m_relators(genus: usize) -> Vec<Relator> {
    let abc = Alphabet::new(m_generators(genus));
    let mut out = m1_family(&abc, genus, "m1", "M1");
    if genus >= 2 {
        out.push(Relator {
            id: "m2".into(),
            lhs: parse(&abc, "(b1 a1 e1 a2)^5"),
            rhs: parse(&abc, "b2 a2 e1 a1 b1 b1 a1 e1 a2 b2"),
            tag: "M2".into(),
        });
    }
    if genus >= 3 {
        let b = Builder::new(&abc, genus);
        let d12 = b.d12.clone();
        let d13 = b.conj(&b.t(2), &d12);
        let d23 = b.conj(&b.t(1), &d13);
        let d3 = b.conj(&parse(&abc, "b2 a2 e1 b1'"), &d13);
        out.push(Relator {
            id: "m3".into(),
            lhs: d3.concat(&parse(&abc, "a1 a2 a3")).unwrap(),
            rhs: d12.concat(&d13).unwrap().concat(&d23).unwrap(),
            tag: "M3".into(),
        });
    }
    out
}

fn m1_family(abc: &Arc<Alphabet>, genus: usize, id_prefix: &str, tag: &str) -> Vec<Relator> {
    m1_pairs(genus)
        .into_iter()
        .map(|(x, y, braided)| {
            if braided {
                Relator {
                    id: format!("{id_prefix}.braid({x},{y})"),
                    lhs: parse(abc, &format!("{x} {y} {x}")),
                    rhs: parse(abc, &format!("{y} {x} {y}")),
                    tag: tag.into(),
                }
            } else {
                Relator {
                    id: format!("{id_prefix}.comm({x},{y})"),
                    lhs: parse(abc, &format!("{x} {y}")),
                    rhs: parse(abc, &format!("{y} {x}")),
                    tag: tag.into(),
                }
            }
        })
        .collect()
}

/// Parses a trusted, internally generated expression.
fn parse(abc: &Arc<Alphabet>, text: &str) -> Word {
    Word::parse(abc, text).unwrap_or_else(|e| panic!("internal expression `{text}`: {e}"))
}

/// Builds the composite twist words over any alphabet containing the chain
/// labels.
struct Builder {
    abc: Arc<Alphabet>,
    genus: usize,
    s: Word,
    r: Word,
    d12: Word,
    t: Vec<Word>,
}

impl Builder {
    fn new(abc: &Arc<Alphabet>, genus: usize) -> Builder {
        let s = parse(abc, "b1 a1 a1 b1");
        let r = parse(abc, "a1 b1 a1");
        let d12 = if genus >= 2 {
            parse(abc, "(a2 e1 a1 b1)' b2 a2 e1 a1 b1")
        } else {
            Word::identity(abc)
        };
        let mut t = Vec::new();
        for i in 1..genus {
            t.push(parse(abc, &format!("e{i} a{i} a{} e{i}", i + 1)));
        }
        Builder {
            abc: Arc::clone(abc),
            genus,
            s,
            r,
            d12,
            t,
        }
    }

    fn t(&self, i: usize) -> Word {
        self.t[i - 1].clone()
    }

    fn conj(&self, a: &Word, b: &Word) -> Word {
        a.conjugate(b).expect("catalog words stay under the length guard")
    }

    fn cat(&self, parts: &[&Word]) -> Word {
        let mut out = Word::identity(&self.abc);
        for p in parts {
            out = out.concat(p).expect("catalog words stay under the length guard");
        }
        out
    }

    /// The twist `d(i,j)` for an ordered pair from `I0`, by sign case.
    fn dij(&self, i: i32, j: i32) -> Word {
        debug_assert!(i < j && i != 0 && j != 0);
        debug_assert!(-(self.genus as i32) <= i && j <= self.genus as i32);
        let mut pre = Word::identity(&self.abc);
        let mut push = |w: Word| pre = pre.concat(&w).unwrap();
        if i > 0 {
            for m in (1..i).rev() {
                push(self.t(m as usize));
            }
            for m in (2..j).rev() {
                push(self.t(m as usize));
            }
            return self.conj(&pre, &self.d12);
        }
        if j < 0 {
            for m in (1..-j).rev() {
                push(self.t(m as usize).invert());
            }
            for m in (2..-i).rev() {
                push(self.t(m as usize).invert());
            }
            push(self.s.invert());
            push(self.t(1).invert());
            push(self.s.invert());
            return self.conj(&pre, &self.d12);
        }
        if i + j == 0 {
            for m in (1..j).rev() {
                push(self.t(m as usize).invert());
                push(self.dij(m, m + 1));
            }
            let core = self.cat(&[&self.s, &self.s, &parse(&self.abc, "a1 a1 a1 a1")]);
            return self.conj(&pre, &core);
        }
        if i + j > 0 {
            for m in (1..-i).rev() {
                push(self.t(m as usize).invert());
            }
            push(self.s.invert());
            for m in (2..j).rev() {
                push(self.t(m as usize));
            }
            return self.conj(&pre, &self.d12);
        }
        for m in (1..-i).rev() {
            push(self.t(m as usize).invert());
        }
        push(self.s.invert());
        for m in (2..=j).rev() {
            push(self.t(m as usize));
        }
        self.conj(&pre, &self.d12)
    }

    fn k(&self, i: usize) -> Word {
        match i {
            1 => parse(&self.abc, "a1"),
            2 => self.d12.clone(),
            3 => self.cat(&[
                &parse(&self.abc, "a1' a2' a2'"),
                &self.dij(1, 2),
                &self.dij(-2, 1),
                &self.dij(-2, 2),
            ]),
            4 => self.cat(&[
                &parse(&self.abc, "a1' a2' a3'"),
                &self.dij(1, 2),
                &self.dij(1, 3),
                &self.dij(2, 3),
            ]),
            5 => self.cat(&[&parse(&self.abc, "a2"), &self.t(1), &self.d12.invert()]),
            _ => parse(&self.abc, "a1").concat(&self.t(1)).unwrap(),
        }
    }

    /// `d_g` by the closed-surface recursion: `d_2 = d(1,2)` and
    /// `d_i = (b2 a2 e1 b1' t2 ... t(i-1)) * d(i-1)`.
    fn dg(&self) -> Word {
        let mut d = self.d12.clone();
        for i in 3..=self.genus {
            let mut pre = parse(&self.abc, "b2 a2 e1 b1'");
            for j in 2..i {
                pre = pre.concat(&self.t(j)).unwrap();
            }
            d = self.conj(&pre, &d);
        }
        d
    }

    /// `d3` in its lantern form.
    fn d3(&self) -> Word {
        self.conj(&parse(&self.abc, "b2 a2 e1 b1'"), &self.dij(1, 3))
    }

    fn tt(&self, i: usize) -> Word {
        if i == 1 {
            parse(&self.abc, "a1 b1 e1 a1")
        } else {
            parse(&self.abc, &format!("a{i} e{i} e{} a{i}", i - 1))
        }
    }

    /// `w0 = a_g e_(g-1) ... a_2 e_1 a_1 b_1`.
    fn w0(&self) -> Word {
        let mut w = Word::identity(&self.abc);
        for i in (2..=self.genus).rev() {
            w = w.concat(&parse(&self.abc, &format!("a{i} e{}", i - 1))).unwrap();
        }
        w.concat(&parse(&self.abc, "a1 b1")).unwrap()
    }

    fn w1(&self) -> Word {
        parse(&self.abc, "a2 e1 a1 b1 b1 a1 e1 a2")
    }

    fn w2(&self) -> Word {
        parse(&self.abc, "e2 a2 e1 a1 a1 e1 a2 e2")
    }

    fn v(&self, i: usize) -> Word {
        let mut v = self.conj(&self.w1(), &parse(&self.abc, "b2"));
        for m in 2..=i {
            v = self.cat(&[
                &self.tt(m - 1).invert(),
                &self.tt(m).invert(),
                &v,
                &self.tt(m),
                &self.tt(m - 1),
            ]);
        }
        v
    }

    fn u(&self, i: usize) -> Word {
        if i == 1 {
            self.cat(&[
                &parse(&self.abc, "(b1 a1 e1 a2)'"),
                &self.v(1),
                &parse(&self.abc, "a2 e1 a1"),
            ])
        } else {
            self.cat(&[
                &parse(&self.abc, &format!("(e{} a{i} e{i} a{})'", i - 1, i + 1)),
                &self.v(i),
                &parse(&self.abc, &format!("a{} e{i} a{i}", i + 1)),
            ])
        }
    }

    /// `dtilde_g = (u_(g-1) ... u_1) * b1`.
    fn dtg(&self) -> Word {
        let mut pre = Word::identity(&self.abc);
        for i in (1..self.genus).rev() {
            pre = pre.concat(&self.u(i)).unwrap();
        }
        self.conj(&pre, &parse(&self.abc, "b1"))
    }

    /// `dtilde_3` in the form used by the alternative presentation.
    fn dt3(&self) -> Word {
        let ttw = self.tt(2);
        let u = self.cat(&[
            &parse(&self.abc, "e2' a3'"),
            &ttw.invert(),
            &parse(&self.abc, "b2"),
            &ttw,
            &parse(&self.abc, "a3 e2"),
        ]);
        let pre = parse(&self.abc, "a3 e2 a2 e1 a1").concat(&u).unwrap();
        self.conj(&pre, &self.d12)
    }

    /// The closed-surface relator word: the chain out and back.
    fn ws(&self) -> Word {
        let c = chain(self.genus);
        let fwd: Vec<&str> = c.iter().map(String::as_str).collect();
        let mut text = fwd.join(" ");
        text.push(' ');
        text.push_str(&fwd.iter().rev().copied().collect::<Vec<_>>().join(" "));
        parse(&self.abc, &text)
    }

    /// `a_g e_(g-1) ... e_1 a_1`.
    fn oddchain(&self) -> Word {
        let mut w = Word::identity(&self.abc);
        for i in (2..=self.genus).rev() {
            w = w.concat(&parse(&self.abc, &format!("a{i} e{}", i - 1))).unwrap();
        }
        w.concat(&parse(&self.abc, "a1")).unwrap()
    }

    /// `b1 a1 e1 a2 ... a_g` (the chain in one direction).
    fn chain_word(&self) -> Word {
        parse(&self.abc, &chain(self.genus).join(" "))
    }
}

/// A catalog of named words and presentations at a fixed genus.
pub struct Catalog {
    genus: usize,
    abc: Arc<Alphabet>,
    order: Vec<String>,
    symbols: HashMap<String, Word>,
    primitives: Vec<String>,
}

impl Catalog {
    pub fn new(genus: usize) -> Catalog {
        assert!(genus >= 1, "genus must be at least 1");
        let g = genus;
        let primitives = m_generators(g);
        let mut labels: Vec<String> = primitives.clone();
        labels.push("s".into());
        labels.push("r".into());
        for i in 1..g {
            labels.push(format!("t{i}"));
        }
        for p in index_pairs(g) {
            labels.push(p.label());
        }
        labels.push("k1".into());
        if g >= 2 {
            labels.extend(["k2", "k3"].map(String::from));
        }
        if g >= 3 {
            labels.push("k4".into());
        }
        if g >= 2 {
            labels.extend(["k5", "k6"].map(String::from));
        }
        if g >= 3 {
            labels.push("d3".into());
        }
        if g >= 2 {
            labels.push("dg".into());
        }
        for i in 1..g {
            labels.push(format!("tt{i}"));
        }
        labels.push("w0".into());
        if g >= 2 {
            labels.push("w1".into());
        }
        if g >= 3 {
            labels.push("w2".into());
        }
        for i in 1..g {
            labels.push(format!("v{i}"));
        }
        for i in 1..g {
            labels.push(format!("u{i}"));
        }
        if g >= 3 {
            labels.push("dtilde3".into());
        }
        if g >= 2 {
            labels.push("dtildeg".into());
        }
        let abc = Alphabet::new(labels.clone());
        let b = Builder::new(&abc, g);

        let mut symbols = HashMap::new();
        for p in &primitives {
            symbols.insert(p.clone(), parse(&abc, p));
        }
        symbols.insert("s".into(), b.s.clone());
        symbols.insert("r".into(), b.r.clone());
        for i in 1..g {
            symbols.insert(format!("t{i}"), b.t(i));
        }
        for p in index_pairs(g) {
            symbols.insert(p.label(), b.dij(p.i, p.j));
        }
        symbols.insert("k1".into(), b.k(1));
        if g >= 2 {
            symbols.insert("k2".into(), b.k(2));
            symbols.insert("k3".into(), b.k(3));
            symbols.insert("k5".into(), b.k(5));
            symbols.insert("k6".into(), b.k(6));
        }
        if g >= 3 {
            symbols.insert("k4".into(), b.k(4));
            symbols.insert("d3".into(), b.d3());
            symbols.insert("w2".into(), b.w2());
            symbols.insert("dtilde3".into(), b.dt3());
        }
        if g >= 2 {
            symbols.insert("dg".into(), b.dg());
            symbols.insert("w1".into(), b.w1());
            symbols.insert("dtildeg".into(), b.dtg());
        }
        for i in 1..g {
            symbols.insert(format!("tt{i}"), b.tt(i));
            symbols.insert(format!("v{i}"), b.v(i));
            symbols.insert(format!("u{i}"), b.u(i));
        }
        symbols.insert("w0".into(), b.w0());

        Catalog {
            genus,
            abc,
            order: labels,
            symbols,
            primitives,
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// The alphabet of all labels known at this genus (primitive and
    /// composite).
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.abc
    }

    /// The chain generator labels.
    pub fn primitives(&self) -> &[String] {
        &self.primitives
    }

    /// All symbol labels in listing order.
    pub fn symbol_names(&self) -> &[String] {
        &self.order
    }

    /// Parses an expression over the catalog alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        Word::parse(&self.abc, text)
    }

    /// The chain-generator word of a symbol. Accepts `d( i , j )` spacing.
    pub fn expand_symbol(&self, name: &str) -> Result<&Word, CatalogError> {
        let key = normalize_label(name);
        self.symbols
            .get(key.as_ref())
            .ok_or_else(|| CatalogError::UnknownSymbol { name: name.into() })
    }

    /// Rewrites a word over catalog labels into chain generators, resolving
    /// letters by name.
    pub fn expand_word(&self, w: &Word) -> Result<Word, CatalogError> {
        let abc = w.alphabet();
        let mut out = Word::identity(&self.abc);
        for l in w.letters() {
            let name = abc.name(l.index);
            let img = self
                .symbols
                .get(name)
                .ok_or_else(|| CatalogError::UnknownSymbol { name: name.into() })?;
            let img = if l.sign < 0 { img.invert() } else { img.clone() };
            out = out.concat(&img)?;
        }
        Ok(out)
    }

    /// The word a pair-indexing operation conjugates by.
    pub fn op_word(&self, op: IndexOp) -> Result<Word, CatalogError> {
        let text = match op {
            IndexOp::T { k, sign } => {
                check_t_index(k, self.genus)?;
                format!("t{k}{}", if sign < 0 { "'" } else { "" })
            }
            IndexOp::S { sign } => format!("s{}", if sign < 0 { "'" } else { "" }),
            IndexOp::Td { k } => {
                check_t_index(k, self.genus)?;
                format!("t{k}' d({k},{})", k + 1)
            }
        };
        Ok(parse(&self.abc, &text))
    }

    /// The closed-surface relator `[chain out-and-back, dg] = 1`.
    pub fn m4_relator(&self) -> Result<Relator, CatalogError> {
        if self.genus < 2 {
            return Err(CatalogError::UnsupportedGenus {
                what: "m4".into(),
                genus: self.genus,
            });
        }
        let b = Builder::new(&self.abc, self.genus);
        Ok(Relator {
            id: "m4".into(),
            lhs: b.ws().commutator(&parse(&self.abc, "dg"))?,
            rhs: Word::identity(&self.abc),
            tag: "M4".into(),
        })
    }

    /// The generator correspondence between the chain naming used here and
    /// the handle-twist naming used in the source the presentations were
    /// collated against: pairs `(chain label, corresponding label)`.
    pub fn dictionary_errata(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        if self.genus >= 2 {
            out.push(("b2".to_string(), "d".to_string()));
        }
        out.push(("b1".to_string(), "a1".to_string()));
        for i in 1..=self.genus {
            out.push((format!("a{i}"), format!("b{i}")));
            if i < self.genus {
                out.push((format!("e{i}"), format!("a{}", i + 1)));
            }
        }
        out
    }

    /// A named presentation at this catalog's genus; `disk_holes` instead
    /// takes the hole count from the genus argument and is available through
    /// [`disk_holes_presentation`].
    pub fn presentation(&self, name: &str) -> Result<Presentation, CatalogError> {
        let genus = self.genus;
        let unsupported = |what: &str| CatalogError::UnsupportedGenus {
            what: what.into(),
            genus,
        };
        match name {
            "thm1" => {
                if genus < 3 {
                    return Err(unsupported("thm1"));
                }
                Ok(Presentation {
                    name: "thm1".into(),
                    genus,
                    generators: m_generators(genus),
                    relators: m_relators(genus),
                })
            }
            "thm2" => {
                if genus != 2 {
                    return Err(unsupported("thm2"));
                }
                Ok(Presentation {
                    name: "thm2".into(),
                    genus,
                    generators: m_generators(genus),
                    relators: m_relators(genus),
                })
            }
            "thm3" => {
                if genus < 2 {
                    return Err(unsupported("thm3"));
                }
                let mut relators = m_relators(genus);
                let b = Builder::new(&self.abc, genus);
                relators.push(Relator {
                    id: "m4".into(),
                    lhs: b.ws().commutator(&b.dg())?,
                    rhs: Word::identity(&self.abc),
                    tag: "M4".into(),
                });
                Ok(Presentation {
                    name: "thm3".into(),
                    genus,
                    generators: m_generators(genus),
                    relators,
                })
            }
            "thm1p" => {
                if genus < 2 {
                    return Err(unsupported("thm1p"));
                }
                Ok(Presentation {
                    name: "thm1p".into(),
                    genus,
                    generators: m_generators(genus),
                    relators: self.alt_relators(),
                })
            }
            "thm3p" => {
                if genus < 2 {
                    return Err(unsupported("thm3p"));
                }
                let mut relators = self.alt_relators();
                let b = Builder::new(&self.abc, genus);
                let mut wd = Word::identity(&self.abc);
                for i in (2..=genus).rev() {
                    wd = wd.concat(&parse(&self.abc, &format!("a{i} e{}", i - 1)))?;
                }
                wd = wd.concat(&parse(&self.abc, "a1 b1 b1 a1"))?;
                for i in 1..genus {
                    wd = wd.concat(&parse(&self.abc, &format!("e{i} a{}", i + 1)))?;
                }
                relators.push(Relator {
                    id: "d".into(),
                    lhs: wd.commutator(&b.dtg())?,
                    rhs: Word::identity(&self.abc),
                    tag: "D".into(),
                });
                Ok(Presentation {
                    name: "thm3p".into(),
                    genus,
                    generators: m_generators(genus),
                    relators,
                })
            }
            "H_stab" => {
                if genus < 2 {
                    return Err(unsupported("H_stab"));
                }
                Ok(Presentation {
                    name: "H_stab".into(),
                    genus,
                    generators: self.h_generators(),
                    relators: self.p_relators(false)?,
                })
            }
            "G_full" => {
                if genus < 2 {
                    return Err(unsupported("G_full"));
                }
                let mut generators = self.h_generators();
                generators.push("r".into());
                Ok(Presentation {
                    name: "G_full".into(),
                    genus,
                    generators,
                    relators: self.p_relators(true)?,
                })
            }
            other => Err(CatalogError::UnknownPresentation { name: other.into() }),
        }
    }

    /// Generators of the stabilized subgroup presentation.
    fn h_generators(&self) -> Vec<String> {
        let mut out: Vec<String> = (1..=self.genus).map(|i| format!("a{i}")).collect();
        out.push("s".into());
        for i in 1..self.genus {
            out.push(format!("t{i}"));
        }
        for p in index_pairs(self.genus) {
            out.push(p.label());
        }
        out
    }

    /// The alternative presentation: braiding family, the square relation,
    /// and (genus >= 3) the extra handle relation.
    fn alt_relators(&self) -> Vec<Relator> {
        let genus = self.genus;
        let abc = Alphabet::new(m_generators(genus));
        let mut out = m1_family(&abc, genus, "a", "A");
        let b = Builder::new(&abc, genus);
        out.push(Relator {
            id: "b".into(),
            lhs: parse(&abc, "(b1 a1 e1)^4"),
            rhs: b.conj(&b.w1(), &parse(&abc, "b2")).concat(&parse(&abc, "b2")).unwrap(),
            tag: "B".into(),
        });
        if genus >= 3 {
            let (tt1, tt2) = (b.tt(1), b.tt(2));
            let rhs = b.cat(&[
                &tt1.invert(),
                &tt2.invert(),
                &parse(&abc, "b2"),
                &tt2,
                &tt1,
                &tt2.invert(),
                &parse(&abc, "b2"),
                &tt2,
                &parse(&abc, "b2"),
            ]);
            out.push(Relator {
                id: "c".into(),
                lhs: parse(&abc, "e2 e1 b1").concat(&b.dt3()).unwrap(),
                rhs,
                tag: "C".into(),
            });
        }
        out
    }

    /// P1-P8, plus P9-P11 when `with_r` is set. Relator words are over the
    /// catalog alphabet using the `a/s/t/d(i,j)/r` labels.
    fn p_relators(&self, with_r: bool) -> Result<Vec<Relator>, CatalogError> {
        let g = self.genus;
        let abc = &self.abc;
        let mut out: Vec<Relator> = Vec::new();
        let mut rel = |id: String, tag: &str, lhs: Word, rhs: Word| {
            out.push(Relator {
                id,
                lhs,
                rhs,
                tag: tag.into(),
            });
        };
        let gen = |name: &str| parse(abc, name);
        let dl = |p: IndexPair| parse(abc, &p.label());

        // P1: meridian twists commute with each other and with every d(i,j).
        for i in 1..=g {
            for j in i + 1..=g {
                rel(
                    format!("p1.comm(a{i},a{j})"),
                    "P1",
                    parse(abc, &format!("a{i} a{j}")),
                    parse(abc, &format!("a{j} a{i}")),
                );
            }
            for p in index_pairs(g) {
                rel(
                    format!("p1.comm(a{i},d{p})"),
                    "P1",
                    gen(&format!("a{i}")).concat(&dl(p))?,
                    dl(p).concat(&gen(&format!("a{i}")))?,
                );
            }
        }
        // P2: the pure-braid families over the I0 order.
        for (id, lhs, rhs, tag) in pure_braid_family(g, "p2", "P2", &|p| p.label(), &index_set(g)) {
            rel(id, &tag, parse(abc, &lhs), parse(abc, &rhs));
        }
        // P3: braiding of the t words.
        for i in 1..g.saturating_sub(1) {
            rel(
                format!("p3.braid(t{i},t{})", i + 1),
                "P3",
                parse(abc, &format!("t{i} t{} t{i}", i + 1)),
                parse(abc, &format!("t{} t{i} t{}", i + 1, i + 1)),
            );
        }
        for i in 1..g {
            for j in i + 2..g {
                rel(
                    format!("p3.comm(t{i},t{j})"),
                    "P3",
                    parse(abc, &format!("t{i} t{j}")),
                    parse(abc, &format!("t{j} t{i}")),
                );
            }
        }
        // P4: squares.
        rel(
            "p4.s^2".into(),
            "P4",
            parse(abc, "s^2"),
            parse(abc, "d(-1,1) a1^-4"),
        );
        for i in 1..g {
            rel(
                format!("p4.t{i}^2"),
                "P4",
                parse(abc, &format!("t{i}^2")),
                parse(
                    abc,
                    &format!("d({i},{j}) d({mj},{mi}) a{i}^-2 a{j}^-2", j = i + 1, mj = -((i + 1) as i32), mi = -(i as i32)),
                ),
            );
        }
        // P5.
        for i in 2..g {
            rel(
                format!("p5.comm(t{i},s)"),
                "P5",
                parse(abc, &format!("t{i} s")),
                parse(abc, &format!("s t{i}")),
            );
        }
        // P6.
        rel(
            "p6".into(),
            "P6",
            parse(abc, "s t1 s t1"),
            parse(abc, "t1 s t1 s"),
        );
        // P7.
        for i in 1..=g {
            rel(
                format!("p7.comm(s,a{i})"),
                "P7",
                parse(abc, &format!("s a{i}")),
                parse(abc, &format!("a{i} s")),
            );
        }
        for i in 1..g {
            rel(
                format!("p7.t{i}(a{i})"),
                "P7",
                parse(abc, &format!("t{i} * a{i}")),
                parse(abc, &format!("a{}", i + 1)),
            );
        }
        for i in 1..=g {
            for j in 1..g {
                if j != i && j + 1 != i {
                    rel(
                        format!("p7.comm(a{i},t{j})"),
                        "P7",
                        parse(abc, &format!("a{i} t{j}")),
                        parse(abc, &format!("t{j} a{i}")),
                    );
                }
            }
        }
        // P8: the proper index-action moves of s and the t_k, and the
        // composite relator at each k.
        let mut p8_ops = vec![IndexOp::S { sign: 1 }];
        for k in 1..g {
            p8_ops.push(IndexOp::T { k, sign: 1 });
        }
        for op in p8_ops {
            for pair in index_pairs(g) {
                if let IndexMove::Pair(img) = index_action(op, pair) {
                    let opw = self.op_word(op)?;
                    rel(
                        format!("p8.{op}{pair}"),
                        "P8",
                        opw.conjugate(&dl(pair))?,
                        dl(img),
                    );
                }
            }
        }
        for k in 1..g {
            let (ki, kj) = (k as i32, (k + 1) as i32);
            rel(
                format!("p8.t{k}.composite"),
                "P8",
                parse(abc, &format!("t{k} * d({},{kj})", -kj)),
                parse(abc, &format!("d({ki},{kj}) * d({},{ki})", -ki)),
            );
        }
        if !with_r {
            return Ok(out);
        }
        // P9: r commutes with the stabilized-subgroup generators.
        let mut h_items: Vec<(String, String)> = vec![
            ("a1^2s".into(), "a1 a1 s".into()),
            ("t1st1".into(), "t1 s t1".into()),
            ("a2".into(), "a2".into()),
            ("d(-2,2)".into(), "d(-2,2)".into()),
            ("dd".into(), "d(-1,1) d(-1,2) d(1,2) a1^-2 a2'".into()),
        ];
        if g >= 3 {
            h_items.push(("d(2,3)".into(), "d(2,3)".into()));
            for i in 2..g {
                h_items.push((format!("t{i}"), format!("t{i}")));
            }
        }
        for (nick, text) in h_items {
            rel(
                format!("p9.{nick}"),
                "P9",
                parse(abc, "r").commutator(&parse(abc, &text))?,
                Word::identity(abc),
            );
        }
        // P10.
        rel(
            "p10".into(),
            "P10",
            parse(abc, "r^2"),
            parse(abc, "s a1^2"),
        );
        // P11: the polyhedral relations for the k words, spelled over the
        // generator list so the presentation stays self-contained.
        let k_expr = |i: usize| -> &'static str {
            match i {
                1 => "a1",
                2 => "d(1,2)",
                3 => "a1' a2' a2' d(1,2) d(-2,1) d(-2,2)",
                4 => "a1' a2' a3' d(1,2) d(1,3) d(2,3)",
                _ => "a2 t1 d(1,2)'",
            }
        };
        let top = if g >= 3 { 4 } else { 3 };
        for i in 1..=top {
            let k = k_expr(i);
            rel(
                format!("p11.k{i}"),
                "P11",
                parse(abc, &format!("(({k}) r)^3")),
                parse(abc, &format!("(({k}) s a1)^2")),
            );
        }
        let k5 = k_expr(5);
        rel(
            "p11.k5".into(),
            "P11",
            parse(abc, &format!("(r ({k5}) r ({k5})')^2")),
            parse(abc, &format!("s a1^2 ({k5}) s a1^2 ({k5})'")),
        );
        rel(
            "p11.k6".into(),
            "P11",
            parse(abc, "(r a1 t1)^5"),
            parse(abc, "(s a1^2 t1)^4"),
        );
        Ok(out)
    }

    /// The fixture suite of a given name.
    pub fn fixture_relations(&self, suite: &str) -> Result<Vec<Fixture>, CatalogError> {
        match suite {
            "sec4" => Ok(self.sec4_fixtures()),
            "sec5" => self.sec5_fixtures(),
            "sec6" => self.sec6_fixtures(),
            "lemma4" => Ok(self.lemma4_fixtures()),
            "lantern" => self.lantern_fixtures(),
            other => Err(CatalogError::UnknownSuite { name: other.into() }),
        }
    }

    fn sec4_fixtures(&self) -> Vec<Fixture> {
        let g = self.genus;
        let abc = &self.abc;
        let mut out: Vec<Fixture> = Vec::new();
        let mut fix = |id: String, tag: &str, min: usize, lhs: Word, rhs: Word| {
            out.push(Fixture::exact(
                Relator {
                    id,
                    lhs,
                    rhs,
                    tag: tag.into(),
                },
                min,
            ));
        };
        let p = |text: &str| parse(abc, text);
        let dl = |i: i32, j: i32| parse(abc, &format!("d({i},{j})"));
        let comm = |a: &Word, b: &Word| a.commutator(b).unwrap();
        let conj = |a: &Word, b: &Word| a.conjugate(b).unwrap();

        // (4): how s and the t words permute the meridian twists.
        for i in 1..g {
            fix(
                format!("sec4.04(t{i},a{i})"),
                "A1",
                i + 1,
                p(&format!("t{i} * a{i}")),
                p(&format!("a{}", i + 1)),
            );
            fix(
                format!("sec4.04(t{i},a{})", i + 1),
                "A1",
                i + 1,
                p(&format!("t{i} * a{}", i + 1)),
                p(&format!("a{i}")),
            );
            for k in 1..=g {
                if k != i && k != i + 1 {
                    fix(
                        format!("sec4.04(t{i},a{k})"),
                        "A1",
                        (i + 1).max(k),
                        p(&format!("t{i} * a{k}")),
                        p(&format!("a{k}")),
                    );
                }
            }
        }
        for i in 1..=g {
            fix(
                format!("sec4.04(s,a{i})"),
                "A1",
                2.max(i),
                p(&format!("s * a{i}")),
                p(&format!("a{i}")),
            );
        }
        if g < 2 {
            return out;
        }
        // (5): conjugation by w0' walks the chain; d(1,2) near-commutes.
        fix("sec4.05.w0(b2)".into(), "A2", 2, p("w0' * b2"), dl(1, 2));
        fix("sec4.05.w0(b1)".into(), "A2", 2, p("w0' * b1"), p("a1"));
        for i in 1..g {
            fix(
                format!("sec4.05.w0(a{i})"),
                "A2",
                i + 1,
                p(&format!("w0' * a{i}")),
                p(&format!("e{i}")),
            );
            fix(
                format!("sec4.05.w0(e{i})"),
                "A2",
                i + 1,
                p(&format!("w0' * e{i}")),
                p(&format!("a{}", i + 1)),
            );
        }
        fix(
            "sec4.05.d12(b1)".into(),
            "A2",
            2,
            p("d(1,2) * b1"),
            p("b1' * d(1,2)"),
        );
        if g >= 3 {
            fix(
                "sec4.05.d12(e2)".into(),
                "A2",
                3,
                p("d(1,2) * e2"),
                p("e2' * d(1,2)"),
            );
        }
        for i in 1..=g {
            fix(
                format!("sec4.05.comm(a{i})"),
                "A2",
                2.max(i),
                comm(&dl(1, 2), &p(&format!("a{i}"))),
                Word::identity(abc),
            );
        }
        for j in 1..g {
            if j != 2 {
                fix(
                    format!("sec4.05.comm(e{j})"),
                    "A2",
                    j + 1,
                    comm(&dl(1, 2), &p(&format!("e{j}"))),
                    Word::identity(abc),
                );
                fix(
                    format!("sec4.05.comm(t{j})"),
                    "A2",
                    j + 1,
                    comm(&dl(1, 2), &p(&format!("t{j}"))),
                    Word::identity(abc),
                );
            }
        }
        // (6): every a_k fixes every d(i,j) under conjugation.
        for k in 1..=g {
            for pr in index_pairs(g) {
                let min = 2.max(k)
                    .max(pr.i.unsigned_abs() as usize)
                    .max(pr.j.unsigned_abs() as usize);
                fix(
                    format!("sec4.06(a{k},d{pr})"),
                    "A3",
                    min,
                    conj(&p(&format!("a{k}")), &dl(pr.i, pr.j)),
                    dl(pr.i, pr.j),
                );
            }
        }
        // (7): braiding and commutation among the t words and s.
        for i in 1..g.saturating_sub(1) {
            fix(
                format!("sec4.07(t{i},t{})", i + 1),
                "(7)",
                i + 2,
                p(&format!("t{i} * t{}", i + 1)),
                p(&format!("t{}' * t{i}", i + 1)),
            );
        }
        for i in 1..g {
            for k in i + 2..g {
                fix(
                    format!("sec4.07.comm(t{i},t{k})"),
                    "(7)",
                    k + 1,
                    comm(&p(&format!("t{i}")), &p(&format!("t{k}"))),
                    Word::identity(abc),
                );
            }
            if i > 1 {
                fix(
                    format!("sec4.07.comm(t{i},s)"),
                    "(7)",
                    i + 1,
                    comm(&p(&format!("t{i}")), &p("s")),
                    Word::identity(abc),
                );
            }
        }
        // (8): consecutive d words ladder up from d(1,2).
        for i in 2..g {
            let mut pre = Word::identity(abc);
            for m in (1..i).rev() {
                pre = pre.concat(&p(&format!("t{m} t{}", m + 1))).unwrap();
            }
            fix(
                format!("sec4.08.d({i},{})", i + 1),
                "(8)",
                i + 1,
                dl(i as i32, i as i32 + 1),
                conj(&pre, &dl(1, 2)),
            );
            let mut prn = Word::identity(abc);
            for m in (1..i).rev() {
                prn = prn.concat(&p(&format!("t{m}' t{}'", m + 1))).unwrap();
            }
            fix(
                format!("sec4.08.d({},{})", -(i as i32) - 1, -(i as i32)),
                "(8)",
                i + 1,
                dl(-(i as i32) - 1, -(i as i32)),
                conj(&prn, &dl(-2, -1)),
            );
            fix(
                format!("sec4.08.step({i})"),
                "(8)",
                i + 1,
                dl(i as i32, i as i32 + 1),
                conj(&p(&format!("t{} t{i}", i - 1)), &dl(i as i32 - 1, i as i32)),
            );
        }
        for k in 1..g {
            for i in 1..g {
                if k.abs_diff(i) != 1 {
                    fix(
                        format!("sec4.08(t{k},d({i},{}))", i + 1),
                        "(8)",
                        (k + 1).max(i + 1),
                        conj(&p(&format!("t{k}")), &dl(i as i32, i as i32 + 1)),
                        dl(i as i32, i as i32 + 1),
                    );
                }
            }
        }
        // (9): the fourth power of b1 a1 e1.
        fix(
            "sec4.09".into(),
            "A5",
            2,
            p("(b1 a1 e1)^4"),
            p("b2 w1 b2 w1'"),
        );
        fix("sec4.09.conj".into(), "A5", 2, p("w1 * b2"), p("w1' * b2"));
        fix(
            "sec4.09.comm".into(),
            "A5",
            2,
            comm(&p("w1 * b2"), &p("b2")),
            Word::identity(abc),
        );
        // (10): s t1 s against the chain square.
        fix(
            "sec4.10a".into(),
            "A6",
            2,
            p("s t1 s"),
            p("b1 a1 e1 a2 a2 e1 a1 b1 t1"),
        );
        fix(
            "sec4.10b".into(),
            "A6",
            2,
            p("s t1 s"),
            p("t1 b1 a1 e1 a2 a2 e1 a1 b1"),
        );
        // (11): the fourth power of a1 e1 a2.
        fix(
            "sec4.11t".into(),
            "A7",
            2,
            p("(a1 e1 a2)^4"),
            p("t1^2 a1^2 a2^2"),
        );
        fix(
            "sec4.11d".into(),
            "A7",
            2,
            p("(a1 e1 a2)^4"),
            dl(1, 2).concat(&dl(-2, -1)).unwrap(),
        );
        fix(
            "sec4.11.comm".into(),
            "A7",
            2,
            comm(&dl(1, 2), &dl(-2, -1)),
            Word::identity(abc),
        );
        fix(
            "sec4.11.conj".into(),
            "A7",
            2,
            dl(-2, -1),
            p("(b1 a1 e1 a2) * b2"),
        );
        if g >= 3 {
            fix("sec4.11.w2".into(), "A7", 3, dl(-2, -1), p("w2 * d(1,2)"));
            fix("sec4.11.w2i".into(), "A7", 3, dl(-2, -1), p("w2' * d(1,2)"));
        }
        // (12)/(15): formally inverting every letter of d(i,j).
        for pr in index_pairs(g) {
            let primed = prime_word(self.symbols.get(&pr.label()).unwrap());
            let min = 2.max(pr.i.unsigned_abs() as usize).max(pr.j.unsigned_abs() as usize);
            if pr.i + pr.j != 0 {
                fix(
                    format!("sec4.12{pr}"),
                    "A8",
                    min,
                    primed,
                    dl(-pr.j, -pr.i).invert(),
                );
            } else {
                fix(
                    format!("sec4.15{pr}"),
                    "A11",
                    min,
                    primed,
                    dl(pr.i, pr.j).invert(),
                );
            }
        }
        // (13): shifting consecutive d words by t pairs, both directions.
        for i in 1..g.saturating_sub(1) {
            fix(
                format!("sec4.13.inv({i})"),
                "A9",
                i + 2,
                dl(i as i32 + 1, i as i32 + 2),
                conj(&p(&format!("t{i}' t{}'", i + 1)), &dl(i as i32, i as i32 + 1)),
            );
            fix(
                format!("sec4.13.fwd({i})"),
                "A9",
                i + 2,
                dl(i as i32 + 1, i as i32 + 2),
                conj(&p(&format!("t{i} t{}", i + 1)), &dl(i as i32, i as i32 + 1)),
            );
        }
        // (14): the square of each t word.
        for i in 1..g {
            fix(
                format!("sec4.14(t{i})"),
                "A10",
                i + 1,
                p(&format!("t{i}^2")),
                p(&format!(
                    "d({i},{j}) d({mj},{mi}) a{i}^-2 a{j}^-2",
                    j = i + 1,
                    mj = -((i + 1) as i32),
                    mi = -(i as i32)
                )),
            );
        }
        // (16).
        fix(
            "sec4.16".into(),
            "(16)",
            2,
            comm(&p("b1"), &dl(-2, 2)),
            Word::identity(abc),
        );
        // (17): t pairs shift the e twists.
        for i in 1..g.saturating_sub(1) {
            fix(
                format!("sec4.17(e{i})"),
                "A12",
                i + 2,
                p(&format!("(t{i} t{}) * e{i}", i + 1)),
                p(&format!("e{}", i + 1)),
            );
        }
        // (18): b1 and the e twists against consecutive d words.
        for i in 2..g {
            fix(
                format!("sec4.18.comm(b1,d({i},{}))", i + 1),
                "A13",
                i + 1,
                comm(&p("b1"), &dl(i as i32, i as i32 + 1)),
                Word::identity(abc),
            );
        }
        for i in 1..g {
            for k in 1..g {
                let min = (i + 1).max(k + 1);
                if k.abs_diff(i) != 1 {
                    fix(
                        format!("sec4.18.comm(e{k},d({i},{}))", i + 1),
                        "A13",
                        min,
                        comm(&p(&format!("e{k}")), &dl(i as i32, i as i32 + 1)),
                        Word::identity(abc),
                    );
                } else {
                    fix(
                        format!("sec4.18(e{k},d({i},{}))", i + 1),
                        "A13",
                        min,
                        conj(&dl(i as i32, i as i32 + 1), &p(&format!("e{k}"))),
                        conj(&p(&format!("e{k}'")), &dl(i as i32, i as i32 + 1)),
                    );
                }
            }
        }
        // (19): sandwich words commute with their neighbours.
        let sandwich = dl(1, 2).concat(&p("s")).unwrap().concat(&dl(1, 2)).unwrap();
        fix(
            "sec4.19(b1)".into(),
            "A14",
            2,
            comm(&p("b1"), &sandwich),
            Word::identity(abc),
        );
        fix(
            "sec4.19(s)".into(),
            "A14",
            2,
            comm(&p("s"), &sandwich),
            Word::identity(abc),
        );
        for i in 1..g {
            for j in 1..g {
                if i.abs_diff(j) == 1 {
                    let mid = dl(i as i32, i as i32 + 1)
                        .concat(&p(&format!("t{j}")))
                        .unwrap()
                        .concat(&dl(i as i32, i as i32 + 1))
                        .unwrap();
                    let min = (i + 1).max(j + 1);
                    fix(
                        format!("sec4.19(e{j},d({i},{}))", i + 1),
                        "A14",
                        min,
                        comm(&p(&format!("e{j}")), &mid),
                        Word::identity(abc),
                    );
                    fix(
                        format!("sec4.19(t{j},d({i},{}))", i + 1),
                        "A14",
                        min,
                        comm(&p(&format!("t{j}")), &mid),
                        Word::identity(abc),
                    );
                }
            }
        }
        // (20): disjointness commutations.
        let pair_min = |pr: IndexPair| {
            2.max(pr.i.unsigned_abs() as usize).max(pr.j.unsigned_abs() as usize)
        };
        for pr in index_pairs(g) {
            if pr.i != -pr.j && pr.i.abs() != 1 && pr.j.abs() != 1 {
                fix(
                    format!("sec4.20({pr},(-1,1))"),
                    "A15",
                    pair_min(pr),
                    comm(&dl(pr.i, pr.j), &dl(-1, 1)),
                    Word::identity(abc),
                );
            }
        }
        let mut cons: Vec<IndexPair> = (1..g as i32)
            .map(|k| IndexPair { i: k, j: k + 1 })
            .collect();
        cons.extend((1..g as i32).map(|m| IndexPair { i: -m - 1, j: -m }));
        for pr in index_pairs(g) {
            for q in &cons {
                let all = [pr.i, pr.j, q.i, q.j];
                let distinct = all
                    .iter()
                    .collect::<std::collections::HashSet<_>>()
                    .len()
                    == 4;
                if distinct {
                    fix(
                        format!("sec4.20({pr},{q})"),
                        "A15",
                        pair_min(pr).max(pair_min(*q)),
                        comm(&dl(pr.i, pr.j), &dl(q.i, q.j)),
                        Word::identity(abc),
                    );
                }
            }
        }
        // (21)-(24): pure-braid consequences restated directly.
        for (rp, sp) in pair_list(g) {
            for (ip, jp) in pair_list(g) {
                let distinct = [rp, sp, ip, jp]
                    .iter()
                    .collect::<std::collections::HashSet<_>>()
                    .len()
                    == 4;
                if distinct && (rp < sp && sp < ip && ip < jp || ip < rp && rp < sp && sp < jp) {
                    let min = idx_min(&[rp, sp, ip, jp]);
                    fix(
                        format!("sec4.21({rp},{sp},{ip},{jp})"),
                        "A16",
                        min,
                        comm(&dl(ip, jp), &dl(rp, sp)),
                        Word::identity(abc),
                    );
                }
            }
        }
        let i0 = index_set(g);
        for &rp in &i0 {
            for &ip in &i0 {
                for &jp in &i0 {
                    if rp < ip && ip < jp {
                        let min = idx_min(&[rp, ip, jp]);
                        fix(
                            format!("sec4.22({rp},{ip},{jp})"),
                            "A17",
                            min,
                            conj(&dl(rp, ip).invert(), &dl(ip, jp)),
                            conj(&dl(rp, jp), &dl(ip, jp)),
                        );
                        fix(
                            format!("sec4.23({rp},{ip},{jp})"),
                            "A18",
                            min,
                            conj(&dl(rp, jp).invert(), &dl(rp, ip)),
                            conj(&dl(ip, jp), &dl(rp, ip)),
                        );
                    }
                }
            }
        }
        for (rp, sp) in pair_list(g) {
            for (ip, jp) in pair_list(g) {
                if rp < ip && ip < sp && sp < jp {
                    let min = idx_min(&[rp, sp, ip, jp]);
                    fix(
                        format!("sec4.24({rp},{sp},{ip},{jp})"),
                        "A19",
                        min,
                        comm(&dl(ip, jp), &conj(&dl(rp, jp).invert(), &dl(rp, sp))),
                        Word::identity(abc),
                    );
                }
            }
        }
        // (25)-(28): the k words against b1.
        let ktop = if g >= 3 { 4 } else { 3 };
        for i in 1..=ktop {
            fix(
                format!("sec4.{}(k{i})", 24 + i),
                &format!("K{i}"),
                if i == 4 { 3 } else { 2 },
                p(&format!("k{i} * b1")),
                p(&format!("b1' * k{i}")),
            );
        }
        // (29).
        fix(
            "sec4.29".into(),
            "K5",
            2,
            p("(r k5 r k5')^2"),
            p("s a1^2 k5 s a1^2 k5'"),
        );
        // (30) and its printed reduction steps.
        fix(
            "sec4.30".into(),
            "K6",
            2,
            p("(r a1 t1)^5"),
            p("(s a1^2 t1)^4"),
        );
        fix("sec4.30.sa".into(), "K6", 2, p("s a1^2"), p("(b1 a1)^3"));
        fix("sec4.30.ra".into(), "K6", 2, p("r a1"), p("(b1 a1)^2"));
        fix(
            "sec4.30.chain_a".into(),
            "K6",
            2,
            p("t1 (b1 a1)^2 t1"),
            p("b1 a1 t1 (b1 a1)^2 e1 a2"),
        );
        fix(
            "sec4.30.chain_b".into(),
            "K6",
            2,
            p("e1 a2 (b1 a1)^2 t1"),
            p("(b1 a1)^2 t1 b1 a1"),
        );
        out
    }

    fn sec5_fixtures(&self) -> Result<Vec<Fixture>, CatalogError> {
        let g = self.genus;
        if g < 2 {
            return Err(CatalogError::UnsupportedGenus {
                what: "sec5".into(),
                genus: g,
            });
        }
        let abc = &self.abc;
        let b = Builder::new(abc, g);
        let p = |text: &str| parse(abc, text);
        let gl = g as i64;
        let mut out = Vec::new();
        // dg (ws * dg) equals the odd chain power: exact in pi1.
        out.push(Fixture::exact(
            Relator {
                id: "sec5.wsdg".into(),
                lhs: b.dg().concat(&b.ws().conjugate(&b.dg())?)?,
                rhs: b.oddchain().power(2 * gl)?,
                tag: "S5".into(),
            },
            2,
        ));
        // The full twist (w0 dg)^(2g+2) equals the chain power: exact too.
        out.push(Fixture::exact(
            Relator {
                id: "sec5.delta".into(),
                lhs: b.w0().concat(&b.dg())?.power(2 * gl + 2)?,
                rhs: b.chain_word().power(4 * gl + 2)?,
                tag: "S5".into(),
            },
            2,
        ));
        // The closed-surface relator holds in homology only.
        out.push(Fixture::homology_only(
            Relator {
                id: "sec5.m4".into(),
                lhs: b.ws().commutator(&b.dg())?,
                rhs: Word::identity(abc),
                tag: "M4".into(),
            },
            2,
        ));
        out.push(Fixture::homology_only(
            Relator {
                id: "sec5.dgconj".into(),
                lhs: b.dg(),
                rhs: b.ws().conjugate(&b.dg())?,
                tag: "S5".into(),
            },
            2,
        ));
        // Homology-only power identity for the even chain.
        let mut even = Word::identity(abc);
        for i in (3..=g).rev() {
            even = even.concat(&p(&format!("a{i} e{}", i - 1)))?;
        }
        even = even.concat(&p("a2"))?;
        out.push(Fixture::sp_only(
            Relator {
                id: "sec5.even".into(),
                lhs: even.power(2 * gl - 2)?,
                rhs: b.dg().concat(&p("b1 a1"))?.power(4)?,
                tag: "S5".into(),
            },
            2,
        ));
        // The boundary-twist expression reduces to nothing: exact in pi1.
        let dgw = b.dg();
        let dexpr = b.cat(&[
            &dgw,
            &dgw,
            &p("b1 a1 b1"),
            &dgw,
            &p("a1' b1'").concat(&dgw.invert())?.power(3)?,
            &dgw,
            &dgw,
            &p("b1"),
        ]);
        out.push(Fixture::exact(
            Relator {
                id: "sec5.deltaexpr".into(),
                lhs: dexpr,
                rhs: Word::identity(abc),
                tag: "S5".into(),
            },
            2,
        ));
        Ok(out)
    }

    fn sec6_fixtures(&self) -> Result<Vec<Fixture>, CatalogError> {
        let g = self.genus;
        if g < 2 {
            return Err(CatalogError::UnsupportedGenus {
                what: "sec6".into(),
                genus: g,
            });
        }
        let abc = &self.abc;
        let b = Builder::new(abc, g);
        let p = |text: &str| parse(abc, text);
        let mut out = Vec::new();
        let mut exact = |id: &str, min: usize, lhs: Word, rhs: Word| {
            out.push(Fixture::exact(
                Relator {
                    id: id.into(),
                    lhs,
                    rhs,
                    tag: "S6".into(),
                },
                min,
            ));
        };
        if g >= 3 {
            // Conjugation by w0 renames the generating set.
            exact("sec6.w(t1)", 3, p("w0 * t1"), p("tt1"));
            exact("sec6.w(t2)", 3, p("w0 * t2"), p("tt2"));
            exact("sec6.tt1var", 3, p("tt1"), p("a1 e1 b1 a1"));
            exact("sec6.tt2var", 3, p("tt2"), p("a2 e1 e2 a2"));
            exact("sec6.w(d12)", 3, p("w0 * d(1,2)"), p("b2"));
            for (src, dst) in [("a1", "b1"), ("e1", "a1"), ("a2", "e1"), ("e2", "a2"), ("a3", "e2")]
            {
                exact(&format!("sec6.w({src})"), 3, p(&format!("w0 * {src}")), p(dst));
            }
            exact("sec6.b", 3, p("(b1 a1 e1)^4"), p("(w1 * b2) b2"));
            let (tt1, tt2) = (b.tt(1), b.tt(2));
            let rhs_c = b.cat(&[
                &tt1.invert(),
                &tt2.invert(),
                &p("b2"),
                &tt2,
                &tt1,
                &tt2.invert(),
                &p("b2"),
                &tt2,
                &p("b2"),
            ]);
            exact("sec6.c", 3, p("e2 e1 b1 dtilde3"), rhs_c);
            exact("sec6.w(d3)", 3, p("w0 * d3"), p("dtilde3"));
            exact("sec6.d3rec", 3, p("dg"), p("d3"));
        } else {
            exact("sec6.b", 2, p("(b1 a1 e1)^4"), p("(w1 * b2) b2"));
        }
        // (D) holds in homology only.
        let mut wd = Word::identity(abc);
        for i in (2..=g).rev() {
            wd = wd.concat(&p(&format!("a{i} e{}", i - 1)))?;
        }
        wd = wd.concat(&p("a1 b1 b1 a1"))?;
        for i in 1..g {
            wd = wd.concat(&p(&format!("e{i} a{}", i + 1)))?;
        }
        out.push(Fixture::homology_only(
            Relator {
                id: "sec6.d".into(),
                lhs: wd.commutator(&b.dtg())?,
                rhs: Word::identity(abc),
                tag: "D".into(),
            },
            2,
        ));
        Ok(out)
    }

    fn lemma4_fixtures(&self) -> Vec<Fixture> {
        let g = self.genus;
        let abc = &self.abc;
        let p = |text: &str| parse(abc, text);
        let mut out = Vec::new();
        let c: Vec<String> = chain(g);
        for k in 2..=2 * g {
            let cs: Vec<&str> = c[..k].iter().map(String::as_str).collect();
            let lhs = p(&cs.join(" ")).power(k as i64 + 1).unwrap();
            let rhs_head = p(&cs[..k - 1].join(" ")).power(k as i64).unwrap();
            let mut mid = cs[1..].to_vec();
            mid.reverse();
            let mid = p(&format!(
                "{} {} {} {}",
                mid.join(" "),
                cs[0],
                cs[0],
                cs[1..].join(" ")
            ));
            let min = 2.max(k.div_ceil(2));
            out.push(Fixture::exact(
                Relator {
                    id: format!("lemma4.v({k})a"),
                    lhs: lhs.clone(),
                    rhs: rhs_head.concat(&mid).unwrap(),
                    tag: "L4".into(),
                },
                min,
            ));
            out.push(Fixture::exact(
                Relator {
                    id: format!("lemma4.v({k})b"),
                    lhs,
                    rhs: mid.concat(&rhs_head).unwrap(),
                    tag: "L4".into(),
                },
                min,
            ));
        }
        out.push(Fixture::exact(
            Relator {
                id: "lemma4.iii".into(),
                lhs: p("(a1 b1)^6"),
                rhs: p("d(-1,1)"),
                tag: "L4".into(),
            },
            2,
        ));
        out.push(Fixture::exact(
            Relator {
                id: "lemma4.iii.s".into(),
                lhs: p("(a1 b1)^6"),
                rhs: p("s^2 a1^4"),
                tag: "L4".into(),
            },
            2,
        ));
        if g >= 3 {
            out.push(Fixture::exact(
                Relator {
                    id: "lemma4.iv".into(),
                    lhs: p("a1 b1 e1 a1 a2 e1 e2 a2 a1 b1 e1 a1"),
                    rhs: p("a2 e2 e1 a2 a1 b1 e1 a1 a2 e1 e2 a2"),
                    tag: "L4".into(),
                },
                3,
            ));
            out.push(Fixture::exact(
                Relator {
                    id: "lemma4.j2a".into(),
                    lhs: p("a1 e1 a1 a2 e1 e2 a2"),
                    rhs: p("e1 a1 a2 e1 e2 a2 e2"),
                    tag: "J".into(),
                },
                3,
            ));
            out.push(Fixture::exact(
                Relator {
                    id: "lemma4.j2b".into(),
                    lhs: p("e1 a1 a2 e1 e2 a2"),
                    rhs: p("e1 a2 e2 a1 e1 a2"),
                    tag: "J".into(),
                },
                3,
            ));
        }
        out.push(Fixture::exact(
            Relator {
                id: "lemma4.j1".into(),
                lhs: p("(a1 b1) * a1"),
                rhs: p("b1"),
                tag: "J".into(),
            },
            2,
        ));
        if g >= 2 {
            out.push(Fixture::exact(
                Relator {
                    id: "lemma4.j3".into(),
                    lhs: p("(b1 a1 e1 a2) * b2"),
                    rhs: p("(b2' a2' e1' a1') * b1"),
                    tag: "J".into(),
                },
                2,
            ));
        }
        out
    }

    fn lantern_fixtures(&self) -> Result<Vec<Fixture>, CatalogError> {
        if self.genus < 3 {
            return Err(CatalogError::UnsupportedGenus {
                what: "lantern".into(),
                genus: self.genus,
            });
        }
        let p = |text: &str| parse(&self.abc, text);
        Ok(vec![Fixture::exact(
            Relator {
                id: "lantern".into(),
                lhs: p("d3 a1 a2 a3"),
                rhs: p("d(1,2) d(1,3) d(2,3)"),
                tag: "M3".into(),
            },
            3,
        )])
    }
}

fn check_t_index(k: usize, genus: usize) -> Result<(), CatalogError> {
    if k == 0 || k >= genus {
        Err(CatalogError::UnsupportedGenus {
            what: format!("t{k}"),
            genus,
        })
    } else {
        Ok(())
    }
}

fn normalize_label(name: &str) -> std::borrow::Cow<'_, str> {
    if name.contains(char::is_whitespace) {
        std::borrow::Cow::Owned(name.split_whitespace().collect::<String>())
    } else {
        std::borrow::Cow::Borrowed(name)
    }
}

/// Flips the sign of every letter in place (no reversal).
fn prime_word(w: &Word) -> Word {
    Word::from_codes(w.alphabet(), w.codes().iter().map(|&c| -c))
        .expect("sign flip preserves reduction")
}

fn pair_list(genus: usize) -> Vec<(i32, i32)> {
    index_pairs(genus).into_iter().map(|p| (p.i, p.j)).collect()
}

fn idx_min(indices: &[i32]) -> usize {
    indices
        .iter()
        .map(|m| m.unsigned_abs() as usize)
        .max()
        .unwrap_or(1)
        .max(2)
}

/// The four pure-braid relator families over an ordered index list, as
/// `(id, lhs, rhs, tag)` expression strings. The label closure renders the
/// generator attached to an ordered pair.
fn pure_braid_family(
    genus_or_n: usize,
    id_prefix: &str,
    tag: &str,
    label: &dyn Fn(IndexPair) -> String,
    indices: &[i32],
) -> Vec<(String, String, String, String)> {
    let _ = genus_or_n;
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            pairs.push(IndexPair {
                i: indices[a],
                j: indices[b],
            });
        }
    }
    let l = |i: i32, j: i32| label(IndexPair { i, j });
    // (a) disjoint or nested pairs commute.
    for rs in &pairs {
        for ij in &pairs {
            let (r, s, i, j) = (rs.i, rs.j, ij.i, ij.j);
            let distinct = [r, s, i, j]
                .iter()
                .collect::<std::collections::HashSet<_>>()
                .len()
                == 4;
            if distinct && (r < s && s < i && i < j || i < r && r < s && s < j) {
                out.push((
                    format!("{id_prefix}a({r},{s},{i},{j})"),
                    format!("{}' * {}", l(r, s), l(i, j)),
                    l(i, j),
                    tag.to_string(),
                ));
            }
        }
    }
    // (b) and (c): the linked cases sharing one index.
    for &r in indices {
        for &s in indices {
            for &j in indices {
                if r < s && s < j {
                    out.push((
                        format!("{id_prefix}b({r},{s},{j})"),
                        format!("{}' * {}", l(r, s), l(s, j)),
                        format!("{} * {}", l(r, j), l(s, j)),
                        tag.to_string(),
                    ));
                    out.push((
                        format!("{id_prefix}c({r},{s},{j})"),
                        format!("{}' * {}", l(r, j), l(r, s)),
                        format!("{} * {}", l(s, j), l(r, s)),
                        tag.to_string(),
                    ));
                }
            }
        }
    }
    // (d) the interleaved case.
    for rs in &pairs {
        for ij in &pairs {
            let (r, s, i, j) = (rs.i, rs.j, ij.i, ij.j);
            if r < i && i < s && s < j {
                out.push((
                    format!("{id_prefix}d({r},{s},{i},{j})"),
                    format!("({}) ({}' * {}) ({})' ({}' * {})'",
                        l(i, j), l(r, j), l(r, s), l(i, j), l(r, j), l(r, s)),
                    "1".to_string(),
                    tag.to_string(),
                ));
            }
        }
    }
    out
}

/// The hole-twist suite on the surface: the abstract disk relations
/// instantiated with hole twists `a_|i|` and the `d(i,j)` family over `I0`.
pub fn disk_holes_suite(cat: &Catalog) -> Result<Vec<Relator>, CatalogError> {
    let g = cat.genus();
    if g < 2 {
        return Err(CatalogError::UnsupportedGenus {
            what: "disk_holes".into(),
            genus: g,
        });
    }
    let abc = cat.alphabet();
    let mut out = Vec::new();
    let i0 = index_set(g);
    // Q1: hole twists commute with everything in the family.
    for a in 0..i0.len() {
        for b in a + 1..i0.len() {
            let (i, j) = (i0[a], i0[b]);
            out.push(Relator {
                id: format!("q1.dd({i},{j})"),
                lhs: parse(abc, &format!("a{} a{}", i.abs(), j.abs())),
                rhs: parse(abc, &format!("a{} a{}", j.abs(), i.abs())),
                tag: "Q1".into(),
            });
        }
    }
    for &i in &i0 {
        for p in index_pairs(g) {
            out.push(Relator {
                id: format!("q1.da({i},{p})"),
                lhs: parse(abc, &format!("a{} {}", i.abs(), p.label())),
                rhs: parse(abc, &format!("{} a{}", p.label(), i.abs())),
                tag: "Q1".into(),
            });
        }
    }
    // Q2: the pure-braid families with d(i,j) generators.
    for (id, lhs, rhs, tag) in
        pure_braid_family(g, "q2", "Q2", &|p| p.label(), &index_set(g))
    {
        out.push(Relator {
            id,
            lhs: parse(abc, &lhs),
            rhs: parse(abc, &rhs),
            tag,
        });
    }
    Ok(out)
}

/// The abstract disk-with-holes presentation on `n` holes: hole twists
/// `d1..dn` and pair generators `a_i_j`.
pub fn disk_holes_presentation(n: usize) -> Result<Presentation, CatalogError> {
    if n < 2 {
        return Err(CatalogError::UnsupportedGenus {
            what: "disk_holes".into(),
            genus: n,
        });
    }
    let mut gens: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
    let indices: Vec<i32> = (1..=n as i32).collect();
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            gens.push(format!("a_{}_{}", indices[a], indices[b]));
        }
    }
    let abc = Alphabet::new(gens.clone());
    let mut relators = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            relators.push(Relator {
                id: format!("q1.dd({i},{j})"),
                lhs: parse(&abc, &format!("d{i} d{j}")),
                rhs: parse(&abc, &format!("d{j} d{i}")),
                tag: "Q1".into(),
            });
        }
        for a in 0..indices.len() {
            for b in a + 1..indices.len() {
                let (x, y) = (indices[a], indices[b]);
                relators.push(Relator {
                    id: format!("q1.da({i},({x},{y}))"),
                    lhs: parse(&abc, &format!("d{i} a_{x}_{y}")),
                    rhs: parse(&abc, &format!("a_{x}_{y} d{i}")),
                    tag: "Q1".into(),
                });
            }
        }
    }
    for (id, lhs, rhs, tag) in pure_braid_family(
        n,
        "q2",
        "Q2",
        &|p| format!("a_{}_{}", p.i, p.j),
        &indices,
    ) {
        relators.push(Relator {
            id,
            lhs: parse(&abc, &lhs),
            rhs: parse(&abc, &rhs),
            tag,
        });
    }
    Ok(Presentation {
        name: "disk_holes".into(),
        genus: n,
        generators: gens,
        relators,
    })
}

/// Renders a presentation in the exchange format.
pub fn export_presentation(p: &Presentation) -> String {
    let mut out = format!("presentation {} genus {}\n", p.name, p.genus);
    out.push_str(&format!("gens: {}\n", p.generators.join(" ")));
    for r in &p.relators {
        out.push_str(&format!("rel {} [{}]: {} = {}\n", r.id, r.tag, r.lhs, r.rhs));
    }
    out
}

/// Parses the exchange format back; inverse of [`export_presentation`].
pub fn parse_presentation(text: &str) -> Result<Presentation, CatalogError> {
    let mut lines = text.lines().enumerate();
    let perr = |line: usize, msg: String| CatalogError::Parse { line: line + 1, msg };
    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(0, "empty input".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (name, genus) = match tokens.as_slice() {
        ["presentation", name, "genus", g] => (
            name.to_string(),
            g.parse::<usize>()
                .map_err(|e| perr(hline, format!("bad genus: {e}")))?,
        ),
        _ => return Err(perr(hline, "expected `presentation <name> genus <g>`".into())),
    };
    let (gline, gens_line) = lines
        .next()
        .ok_or_else(|| perr(hline + 1, "missing `gens:` line".into()))?;
    let gens_body = gens_line
        .strip_prefix("gens:")
        .ok_or_else(|| perr(gline, "expected `gens: ...`".into()))?;
    let generators: Vec<String> = gens_body.split_whitespace().map(String::from).collect();
    if generators.is_empty() {
        return Err(perr(gline, "no generators listed".into()));
    }
    let abc = Alphabet::try_new(generators.clone())
        .map_err(|e| perr(gline, e))?;
    let mut relators = Vec::new();
    for (lno, line) in lines {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let body = line
            .strip_prefix("rel ")
            .ok_or_else(|| perr(lno, "expected `rel <id> [<tag>]: <lhs> = <rhs>`".into()))?;
        let open = body
            .find(" [")
            .ok_or_else(|| perr(lno, "missing `[<tag>]`".into()))?;
        let id = body[..open].to_string();
        let rest = &body[open + 2..];
        let close = rest
            .find("]:")
            .ok_or_else(|| perr(lno, "missing `]:`".into()))?;
        let tag = rest[..close].to_string();
        let eq_body = rest[close + 2..].trim();
        let (lhs_text, rhs_text) = eq_body
            .split_once(" = ")
            .ok_or_else(|| perr(lno, "missing ` = `".into()))?;
        let lhs = Word::parse(&abc, lhs_text)
            .map_err(|e| perr(lno, format!("lhs: {e}")))?;
        let rhs = Word::parse(&abc, rhs_text)
            .map_err(|e| perr(lno, format!("rhs: {e}")))?;
        relators.push(Relator { id, lhs, rhs, tag });
    }
    Ok(Presentation {
        name,
        genus,
        generators,
        relators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autfree::TwistTable;

    fn holds(table: &TwistTable, cat: &Catalog, lhs: &Word, rhs: &Word) -> bool {
        let l = cat.expand_word(lhs).unwrap();
        let r = cat.expand_word(rhs).unwrap();
        let diff = l.concat(&r.invert()).unwrap();
        table.evaluate_word(&diff).unwrap().is_identity()
    }

    #[test]
    fn m1_counts_match_the_pair_formula() {
        assert_eq!(m1_pairs(1).len(), 1);
        for g in 1..=4 {
            let n = 2 * g + if g >= 2 { 1 } else { 0 };
            assert_eq!(m1_pairs(g).len(), n * (n - 1) / 2);
            let braided = m1_pairs(g).iter().filter(|(_, _, b)| *b).count();
            assert_eq!(braided, if g == 1 { 1 } else { 2 * g });
        }
    }

    #[test]
    fn expansion_matches_known_words() {
        let cat = Catalog::new(2);
        assert_eq!(
            cat.expand_symbol("s").unwrap().render(),
            "b1 a1 a1 b1"
        );
        assert_eq!(
            cat.expand_symbol("d(1,2)").unwrap().render(),
            "b1' a1' e1' a2' b2 a2 e1 a1 b1"
        );
        assert_eq!(
            cat.expand_symbol("d( 1 , 2 )").unwrap(),
            cat.expand_symbol("d(1,2)").unwrap()
        );
        assert_eq!(cat.expand_symbol("w0").unwrap().render(), "a2 e1 a1 b1");
        assert!(matches!(
            cat.expand_symbol("t5"),
            Err(CatalogError::UnknownSymbol { .. })
        ));
        // dg at genus 2 is d(1,2).
        assert_eq!(cat.expand_symbol("dg").unwrap(), cat.expand_symbol("d(1,2)").unwrap());
    }

    #[test]
    fn expand_word_substitutes_and_inverts() {
        let cat = Catalog::new(2);
        let w = cat.parse_word("s' a1").unwrap();
        assert_eq!(
            cat.expand_word(&w).unwrap(),
            cat.parse_word("b1' a1' a1' b1' a1").unwrap()
        );
    }

    #[test]
    fn index_action_counts_and_samples() {
        // Proper moves over all five operation kinds.
        for (g, want) in [(2usize, 17usize), (3, 70)] {
            let mut ops = vec![IndexOp::S { sign: 1 }, IndexOp::S { sign: -1 }];
            for k in 1..g {
                ops.push(IndexOp::T { k, sign: 1 });
                ops.push(IndexOp::T { k, sign: -1 });
                ops.push(IndexOp::Td { k });
            }
            let mut proper = 0;
            for op in &ops {
                for pair in index_pairs(g) {
                    if let IndexMove::Pair(_) = index_action(*op, pair) {
                        proper += 1;
                    }
                }
            }
            assert_eq!(proper, want, "genus {g}");
        }
        let p = |i, j| IndexPair { i, j };
        assert_eq!(
            index_action(IndexOp::T { k: 1, sign: 1 }, p(-2, 1)),
            IndexMove::Pair(p(-1, 2))
        );
        assert_eq!(
            index_action(IndexOp::T { k: 1, sign: 1 }, p(-1, 2)),
            IndexMove::Blocked
        );
        assert_eq!(
            index_action(IndexOp::S { sign: 1 }, p(-1, 1)),
            IndexMove::Pair(p(-1, 1))
        );
        assert_eq!(index_action(IndexOp::S { sign: 1 }, p(1, 2)), IndexMove::Blocked);
        assert_eq!(
            index_action(IndexOp::S { sign: 1 }, p(-2, -1)),
            IndexMove::Pair(p(-2, 1))
        );
        assert_eq!(
            index_action(IndexOp::Td { k: 1 }, p(-1, 1)),
            IndexMove::Pair(p(-2, 2))
        );
        assert_eq!(index_action(IndexOp::Td { k: 1 }, p(2, 3)), IndexMove::Blocked);
    }

    #[test]
    fn index_action_moves_are_sound_in_pi1() {
        for g in [2usize, 3] {
            let cat = Catalog::new(g);
            let table = TwistTable::standard(g);
            let mut ops = vec![IndexOp::S { sign: 1 }, IndexOp::S { sign: -1 }];
            for k in 1..g {
                ops.push(IndexOp::T { k, sign: 1 });
                ops.push(IndexOp::T { k, sign: -1 });
                ops.push(IndexOp::Td { k });
            }
            for op in ops {
                let opw = cat.op_word(op).unwrap();
                for pair in index_pairs(g) {
                    if let IndexMove::Pair(img) = index_action(op, pair) {
                        let lhs = opw
                            .conjugate(cat.expand_symbol(&pair.label()).unwrap())
                            .unwrap();
                        let rhs = cat.parse_word(&img.label()).unwrap();
                        assert!(
                            holds(&table, &cat, &lhs, &rhs),
                            "genus {g}: {op} on {pair}"
                        );
                    }
                }
            }
            // The blocked diagonal case is a conjugate, not a plain move.
            for k in 1..g {
                let (ki, kj) = (k as i32, k as i32 + 1);
                let lhs = cat
                    .parse_word(&format!("t{k} * d({},{kj})", -kj))
                    .unwrap();
                let rhs = cat
                    .parse_word(&format!("d({ki},{kj}) * d({},{ki})", -ki))
                    .unwrap();
                assert!(holds(&table, &cat, &lhs, &rhs), "composite at k={k}");
                let perm = cat.parse_word(&format!("d({},{ki})", -ki)).unwrap();
                assert!(
                    !holds(&table, &cat, &lhs, &perm),
                    "blocked case must differ from the permuted generator"
                );
            }
        }
    }

    #[test]
    fn presentation_sizes_and_errors() {
        let cat2 = Catalog::new(2);
        let thm2 = cat2.presentation("thm2").unwrap();
        assert_eq!(thm2.relators.len(), 11);
        assert!(matches!(
            cat2.presentation("thm1"),
            Err(CatalogError::UnsupportedGenus { .. })
        ));
        let cat3 = Catalog::new(3);
        let thm1 = cat3.presentation("thm1").unwrap();
        assert_eq!(thm1.relators.len(), 21 + 2);
        assert!(matches!(
            cat3.presentation("thm2"),
            Err(CatalogError::UnsupportedGenus { .. })
        ));
        let h = cat3.presentation("H_stab").unwrap();
        let p8 = h.relators.iter().filter(|r| r.tag == "P8").count();
        assert_eq!(p8, 29);
        let p2 = h.relators.iter().filter(|r| r.tag == "P2").count();
        assert_eq!(p2, 85);
        let g = cat3.presentation("G_full").unwrap();
        assert!(g.relators.iter().any(|r| r.id == "p11.k4"));
        let g2 = cat2.presentation("G_full").unwrap();
        assert!(!g2.relators.iter().any(|r| r.id == "p11.k4"));
        assert!(!g2.relators.iter().any(|r| r.id == "p9.d(2,3)"));
        assert!(matches!(
            cat2.presentation("nope"),
            Err(CatalogError::UnknownPresentation { .. })
        ));
    }

    #[test]
    fn fixture_suites_have_expected_shapes() {
        let cat3 = Catalog::new(3);
        let sec4 = cat3.fixture_relations("sec4").unwrap();
        let twenty = sec4
            .iter()
            .filter(|f| f.relator.id.starts_with("sec4.20"))
            .count();
        assert_eq!(twenty, 24 + 4);
        assert!(sec4.iter().any(|f| f.relator.id == "sec4.30.chain_a"));
        let sec5 = cat3.fixture_relations("sec5").unwrap();
        assert!(sec5.iter().any(|f| f.relator.id == "sec5.delta"
            && f.pi1 == Expectation::Holds));
        assert!(sec5.iter().any(|f| f.relator.id == "sec5.m4"
            && f.pi1 == Expectation::Fails
            && f.sp == Expectation::Holds));
        let lem = cat3.fixture_relations("lemma4").unwrap();
        assert!(lem.iter().any(|f| f.relator.id == "lemma4.iv"));
        assert!(cat3.fixture_relations("nope").is_err());
        // All fixture min_genus values are honored at this genus.
        for f in sec4.iter().chain(sec5.iter()).chain(lem.iter()) {
            assert!(f.min_genus <= 3, "{} claims min genus {}", f.relator.id, f.min_genus);
        }
    }

    #[test]
    fn export_round_trips_bit_exactly() {
        let cat = Catalog::new(2);
        for name in ["thm2", "thm3", "thm1p", "H_stab", "G_full"] {
            let p = cat.presentation(name).unwrap();
            let text = export_presentation(&p);
            let back = parse_presentation(&text).unwrap();
            assert_eq!(export_presentation(&back), text, "{name}");
        }
        let dh = disk_holes_presentation(4).unwrap();
        let text = export_presentation(&dh);
        assert_eq!(export_presentation(&parse_presentation(&text).unwrap()), text);
    }

    #[test]
    fn dictionary_lists_the_correspondence() {
        let cat = Catalog::new(3);
        let d = cat.dictionary_errata();
        assert_eq!(d[0], ("b2".to_string(), "d".to_string()));
        assert!(d.contains(&("e2".to_string(), "a3".to_string())));
        assert!(d.contains(&("a3".to_string(), "b3".to_string())));
        assert_eq!(d.len(), 7);
    }

    #[test]
    fn disk_holes_suite_mirrors_the_pure_braid_families() {
        let cat = Catalog::new(2);
        let rels = disk_holes_suite(&cat).unwrap();
        let q2 = rels.iter().filter(|r| r.tag == "Q2").count();
        let h = cat.presentation("H_stab").unwrap();
        let p2 = h.relators.iter().filter(|r| r.tag == "P2").count();
        assert_eq!(q2, p2);
        assert_eq!(q2, 11);
    }
}
