//! Elementary rewriting of twist words: braid moves, commutations, free
//! cancellation, replayable derivation scripts, bounded search for short
//! derivations, and Tietze moves on presentations.
//!
//! The engine works on raw signed-letter sequences, not on freely reduced
//! words: cancellation is itself an explicit step (`reduce`), so a script
//! documents every change between its start and end words. The braid rule
//! `braid(x,y)` licenses all eight signed window shapes derivable from
//! `x y x = y x y`; `comm(x,y)` swaps adjacent letters of the two labels
//! with any signs.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::catalog::{m1_pairs, Presentation, Relator};
use crate::verifier::{CheckResult, Rep, Status};
use crate::word::{Alphabet, Word, WordError};

/// Errors from rewriting, replay, scripts, and Tietze moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteError {
    UnknownRule { rule: String },
    RuleNotLicensed { rule: String },
    Inapplicable { rule: String, pos: usize, reason: String },
    Replay { index: usize, rule: String, reason: String },
    EndMismatch { got: String, want: String },
    Parse { line: usize, msg: String },
    MissingCertificate { id: String, detail: String },
    NotDefined { name: String },
    NameClash { name: String },
    Word(WordError),
}

impl From<WordError> for RewriteError {
    fn from(e: WordError) -> Self {
        RewriteError::Word(e)
    }
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::UnknownRule { rule } => write!(f, "unknown rule `{rule}`"),
            RewriteError::RuleNotLicensed { rule } => {
                write!(f, "rule `{rule}` is not licensed by the rule set")
            }
            RewriteError::Inapplicable { rule, pos, reason } => {
                write!(f, "`{rule}` does not apply at position {pos}: {reason}")
            }
            RewriteError::Replay { index, rule, reason } => {
                write!(f, "step {index} (`{rule}`) failed: {reason}")
            }
            RewriteError::EndMismatch { got, want } => {
                write!(f, "script ends at `{got}`, claimed `{want}`")
            }
            RewriteError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            RewriteError::MissingCertificate { id, detail } => {
                write!(f, "relator `{id}` lacks a valid certificate: {detail}")
            }
            RewriteError::NotDefined { name } => {
                write!(f, "generator `{name}` has no defining relator")
            }
            RewriteError::NameClash { name } => write!(f, "generator `{name}` already exists"),
            RewriteError::Word(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RewriteError {}

/// An oriented equation usable as a rewrite in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Word,
    pub rhs: Word,
}

/// Braided and commuting label pairs, plus optional extra equations.
///
/// Pairs are unordered: `braid(x,y)` and `braid(y,x)` name the same rule
/// with the roles of the two labels exchanged.
#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    braided: Vec<(String, String)>,
    commuting: Vec<(String, String)>,
    equations: Vec<Equation>,
}

impl RuleSet {
    pub fn new(
        braided: Vec<(String, String)>,
        commuting: Vec<(String, String)>,
    ) -> RuleSet {
        RuleSet {
            braided,
            commuting,
            equations: Vec::new(),
        }
    }

    /// The chain-presentation rule set at a genus: braided and commuting
    /// pairs exactly as in the braiding/commutation relator family.
    pub fn from_m1(genus: usize) -> RuleSet {
        let mut braided = Vec::new();
        let mut commuting = Vec::new();
        for (x, y, b) in m1_pairs(genus) {
            if b {
                braided.push((x, y));
            } else {
                commuting.push((x, y));
            }
        }
        RuleSet {
            braided,
            commuting,
            equations: Vec::new(),
        }
    }

    pub fn with_equation(mut self, eq: Equation) -> RuleSet {
        self.equations.push(eq);
        self
    }

    pub fn braided(&self) -> &[(String, String)] {
        &self.braided
    }

    pub fn commuting(&self) -> &[(String, String)] {
        &self.commuting
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    fn licenses_braid(&self, x: &str, y: &str) -> bool {
        self.braided
            .iter()
            .any(|(a, b)| (a == x && b == y) || (a == y && b == x))
    }

    fn licenses_comm(&self, x: &str, y: &str) -> bool {
        self.commuting
            .iter()
            .any(|(a, b)| (a == x && b == y) || (a == y && b == x))
    }

    fn equation(&self, name: &str) -> Option<&Equation> {
        self.equations.iter().find(|e| e.name == name)
    }
}

/// Direction of a step: `Fwd` reads the rule left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Fwd,
    Rev,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Rev,
            Dir::Rev => Dir::Fwd,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Fwd => "fwd",
            Dir::Rev => "rev",
        })
    }
}

/// One rewrite step: a rule id, the letter position it applies at, and a
/// direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivationStep {
    pub rule: String,
    pub pos: usize,
    pub dir: Dir,
}

impl fmt::Display for DerivationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {} {}", self.rule, self.pos, self.dir)
    }
}

/// A start word, a step list, and the claimed end word.
#[derive(Debug, Clone)]
pub struct DerivationScript {
    pub start: Word,
    pub steps: Vec<DerivationStep>,
    pub end: Word,
}

impl DerivationScript {
    /// Renders the script in its text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("start: {}\n", self.start);
        for s in &self.steps {
            out.push_str(&format!("step: {s}\n"));
        }
        out.push_str(&format!("end: {}\n", self.end));
        out
    }
}

/// Parses a script over a fixed alphabet. Lines: `start: <word>`, then
/// `step: <rule-id> @ <pos> <dir>` lines, then `end: <word>`. Blank lines
/// and `#` comments are skipped.
pub fn parse_script(abc: &Arc<Alphabet>, text: &str) -> Result<DerivationScript, RewriteError> {
    let mut start: Option<Word> = None;
    let mut end: Option<Word> = None;
    let mut steps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| RewriteError::Parse { line: lineno, msg };
        if let Some(body) = line.strip_prefix("start:") {
            if start.is_some() {
                return Err(perr("duplicate `start:`".into()));
            }
            start = Some(Word::parse(abc, body.trim()).map_err(|e| perr(e.to_string()))?);
        } else if let Some(body) = line.strip_prefix("step:") {
            let body = body.trim();
            let (rule, rest) = body
                .split_once(" @ ")
                .ok_or_else(|| perr(format!("expected `<rule> @ <pos> <dir>`, got `{body}`")))?;
            let mut it = rest.split_whitespace();
            let pos: usize = it
                .next()
                .ok_or_else(|| perr("missing position".into()))?
                .parse()
                .map_err(|e| perr(format!("bad position: {e}")))?;
            let dir = match it.next() {
                Some("fwd") => Dir::Fwd,
                Some("rev") => Dir::Rev,
                other => return Err(perr(format!("bad direction `{other:?}`"))),
            };
            if it.next().is_some() {
                return Err(perr("trailing tokens after direction".into()));
            }
            steps.push(DerivationStep {
                rule: rule.trim().to_string(),
                pos,
                dir,
            });
        } else if let Some(body) = line.strip_prefix("end:") {
            if end.is_some() {
                return Err(perr("duplicate `end:`".into()));
            }
            end = Some(Word::parse(abc, body.trim()).map_err(|e| perr(e.to_string()))?);
        } else {
            return Err(perr(format!("unrecognized line `{line}`")));
        }
    }
    Ok(DerivationScript {
        start: start.ok_or(RewriteError::Parse {
            line: 0,
            msg: "missing `start:`".into(),
        })?,
        steps,
        end: end.ok_or(RewriteError::Parse {
            line: 0,
            msg: "missing `end:`".into(),
        })?,
    })
}

/// Signed window map for the braid rule: input signs of the `(x, y, x)`
/// window, output signs of the `(y, x, y)` window. The two missing shapes
/// (`x y' x` and its inverse) have no length-preserving consequence.
fn braid_signs(s1: i8, s2: i8, s3: i8) -> Option<(i8, i8, i8)> {
    match (s1, s2, s3) {
        (1, 1, 1) => Some((1, 1, 1)),
        (-1, -1, -1) => Some((-1, -1, -1)),
        (1, 1, -1) => Some((-1, 1, 1)),
        (-1, 1, 1) => Some((1, 1, -1)),
        (1, -1, -1) => Some((-1, -1, 1)),
        (-1, -1, 1) => Some((1, -1, -1)),
        _ => None,
    }
}

/// Parses a rule id into its kind and arguments. Arguments may themselves
/// contain parentheses (indexed labels), so the comma split tracks depth.
fn parse_rule_id(rule: &str) -> Result<RuleKind<'_>, RewriteError> {
    if rule == "reduce" {
        return Ok(RuleKind::Reduce);
    }
    let err = || RewriteError::UnknownRule { rule: rule.into() };
    let open = rule.find('(').ok_or_else(err)?;
    if !rule.ends_with(')') {
        return Err(err());
    }
    let kind = &rule[..open];
    let body = &rule[open + 1..rule.len() - 1];
    match kind {
        "eq" => Ok(RuleKind::Eq(body)),
        "braid" | "comm" => {
            let mut depth = 0usize;
            let mut split = None;
            for (i, c) in body.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(err)?;
            let (x, y) = (body[..i].trim(), body[i + 1..].trim());
            if x.is_empty() || y.is_empty() {
                return Err(err());
            }
            if kind == "braid" {
                Ok(RuleKind::Braid(x, y))
            } else {
                Ok(RuleKind::Comm(x, y))
            }
        }
        _ => Err(err()),
    }
}

enum RuleKind<'a> {
    Braid(&'a str, &'a str),
    Comm(&'a str, &'a str),
    Eq(&'a str),
    Reduce,
}

/// Applies one step to a raw signed-code sequence. No free reduction is
/// performed; `reduce` is the only step that shortens the sequence.
fn apply_raw(
    rules: &RuleSet,
    abc: &Arc<Alphabet>,
    raw: &[i32],
    step: &DerivationStep,
) -> Result<Vec<i32>, RewriteError> {
    let nope = |reason: &str| RewriteError::Inapplicable {
        rule: step.rule.clone(),
        pos: step.pos,
        reason: reason.into(),
    };
    let code_at = |p: usize| -> Result<i32, RewriteError> {
        raw.get(p).copied().ok_or_else(|| nope("position out of range"))
    };
    let idx = |c: i32| (c.unsigned_abs() - 1) as usize;
    let sgn = |c: i32| if c > 0 { 1i8 } else { -1 };
    match parse_rule_id(&step.rule)? {
        RuleKind::Braid(x, y) => {
            if !rules.licenses_braid(x, y) {
                return Err(RewriteError::RuleNotLicensed {
                    rule: step.rule.clone(),
                });
            }
            let (a, b) = match step.dir {
                Dir::Fwd => (x, y),
                Dir::Rev => (y, x),
            };
            let ai = abc
                .index_of(a)
                .ok_or_else(|| nope("label not in alphabet"))?;
            let bi = abc
                .index_of(b)
                .ok_or_else(|| nope("label not in alphabet"))?;
            let (c1, c2, c3) = (code_at(step.pos)?, code_at(step.pos + 1)?, code_at(step.pos + 2)?);
            if idx(c1) != ai || idx(c2) != bi || idx(c3) != ai {
                return Err(nope("window letters do not match the rule pair"));
            }
            let (t1, t2, t3) = braid_signs(sgn(c1), sgn(c2), sgn(c3))
                .ok_or_else(|| nope("sign shape has no braid consequence"))?;
            let mut out = raw.to_vec();
            let (ac, bc) = ((ai + 1) as i32, (bi + 1) as i32);
            out[step.pos] = bc * t1 as i32;
            out[step.pos + 1] = ac * t2 as i32;
            out[step.pos + 2] = bc * t3 as i32;
            Ok(out)
        }
        RuleKind::Comm(x, y) => {
            if !rules.licenses_comm(x, y) {
                return Err(RewriteError::RuleNotLicensed {
                    rule: step.rule.clone(),
                });
            }
            let (a, b) = match step.dir {
                Dir::Fwd => (x, y),
                Dir::Rev => (y, x),
            };
            let ai = abc
                .index_of(a)
                .ok_or_else(|| nope("label not in alphabet"))?;
            let bi = abc
                .index_of(b)
                .ok_or_else(|| nope("label not in alphabet"))?;
            let (c1, c2) = (code_at(step.pos)?, code_at(step.pos + 1)?);
            if idx(c1) != ai || idx(c2) != bi {
                return Err(nope("window letters do not match the rule pair"));
            }
            let mut out = raw.to_vec();
            out.swap(step.pos, step.pos + 1);
            Ok(out)
        }
        RuleKind::Eq(name) => {
            let eq = rules
                .equation(name)
                .ok_or_else(|| RewriteError::RuleNotLicensed {
                    rule: step.rule.clone(),
                })?;
            let (from, to) = match step.dir {
                Dir::Fwd => (eq.lhs.codes(), eq.rhs.codes()),
                Dir::Rev => (eq.rhs.codes(), eq.lhs.codes()),
            };
            if step.pos + from.len() > raw.len() || &raw[step.pos..step.pos + from.len()] != from {
                return Err(nope("sequence does not match the equation side"));
            }
            let mut out = Vec::with_capacity(raw.len() - from.len() + to.len());
            out.extend_from_slice(&raw[..step.pos]);
            out.extend_from_slice(to);
            out.extend_from_slice(&raw[step.pos + from.len()..]);
            Ok(out)
        }
        RuleKind::Reduce => {
            if step.dir == Dir::Rev {
                return Err(nope("cancellation has no reverse form"));
            }
            let (c1, c2) = (code_at(step.pos)?, code_at(step.pos + 1)?);
            if c1 != -c2 {
                return Err(nope("letters are not an inverse pair"));
            }
            let mut out = raw.to_vec();
            out.drain(step.pos..step.pos + 2);
            Ok(out)
        }
    }
}

/// Applies one step to a word and freely reduces the result.
pub fn apply_step(
    rules: &RuleSet,
    w: &Word,
    step: &DerivationStep,
) -> Result<Word, RewriteError> {
    let raw = apply_raw(rules, w.alphabet(), w.codes(), step)?;
    Ok(Word::from_codes(w.alphabet(), raw)?)
}

/// Replays a script and returns every raw state, the start word first.
pub fn replay_states(
    rules: &RuleSet,
    script: &DerivationScript,
) -> Result<Vec<Vec<i32>>, RewriteError> {
    let abc = script.start.alphabet();
    let mut states = vec![script.start.codes().to_vec()];
    for (i, step) in script.steps.iter().enumerate() {
        let next = apply_raw(rules, abc, states.last().unwrap(), step).map_err(|e| {
            RewriteError::Replay {
                index: i,
                rule: step.rule.clone(),
                reason: e.to_string(),
            }
        })?;
        states.push(next);
    }
    if states.last().unwrap() != script.end.codes() {
        let got = Word::from_codes(abc, states.last().unwrap().clone())?;
        return Err(RewriteError::EndMismatch {
            got: got.render(),
            want: script.end.render(),
        });
    }
    Ok(states)
}

/// Replays a script; the result is the claimed end word. The error names
/// the first failing step.
pub fn replay(rules: &RuleSet, script: &DerivationScript) -> Result<Word, RewriteError> {
    replay_states(rules, script)?;
    Ok(script.end.clone())
}

/// Bounds for [`search`]. `max_steps` counts braid/commutation moves;
/// explicit cancellations ride along for free. `max_len` caps intermediate
/// reduced words and defaults to `2 * max(|lhs|, |rhs|) + 8`. `max_states`
/// caps the total explored states; exhausting any bound yields `None`
/// (inconclusive, never a disproof).
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub max_steps: usize,
    pub max_len: Option<usize>,
    pub max_states: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_steps: 20,
            max_len: None,
            max_states: 1 << 20,
        }
    }
}

struct EdgeInfo {
    parent: Option<Vec<i32>>,
    steps: Vec<DerivationStep>,
}

/// One rewrite neighbor of a reduced sequence, with the steps that realize
/// it. In `forward` mode cancellations are applied (and recorded,
/// leftmost first) after the move; otherwise only moves whose raw result
/// is already reduced are offered, so every recorded step is invertible.
fn neighbors(
    rules: &RuleSet,
    abc: &Arc<Alphabet>,
    node: &[i32],
    forward: bool,
    max_len: usize,
) -> Vec<(Vec<i32>, Vec<DerivationStep>)> {
    let mut out = Vec::new();
    let idx = |c: i32| (c.unsigned_abs() - 1) as usize;
    let mut candidates: Vec<DerivationStep> = Vec::new();
    for pos in 0..node.len() {
        if pos + 3 <= node.len() {
            let (i1, i2, i3) = (idx(node[pos]), idx(node[pos + 1]), idx(node[pos + 2]));
            if i1 == i3 && i1 != i2 {
                let (x, y) = (abc.name(i1), abc.name(i2));
                if rules.licenses_braid(x, y) {
                    // Orient the id as stored; the window decides the dir.
                    let stored = rules
                        .braided
                        .iter()
                        .find(|(a, b)| (a == x && b == y) || (a == y && b == x))
                        .expect("licensed");
                    let dir = if stored.0 == x { Dir::Fwd } else { Dir::Rev };
                    candidates.push(DerivationStep {
                        rule: format!("braid({},{})", stored.0, stored.1),
                        pos,
                        dir,
                    });
                }
            }
        }
        if pos + 2 <= node.len() {
            let (i1, i2) = (idx(node[pos]), idx(node[pos + 1]));
            if i1 != i2 {
                let (x, y) = (abc.name(i1), abc.name(i2));
                if rules.licenses_comm(x, y) {
                    let stored = rules
                        .commuting
                        .iter()
                        .find(|(a, b)| (a == x && b == y) || (a == y && b == x))
                        .expect("licensed");
                    let dir = if stored.0 == x { Dir::Fwd } else { Dir::Rev };
                    candidates.push(DerivationStep {
                        rule: format!("comm({},{})", stored.0, stored.1),
                        pos,
                        dir,
                    });
                }
            }
        }
    }
    for step in candidates {
        let raw = match apply_raw(rules, abc, node, &step) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let mut steps = vec![step];
        let reduced = if forward {
            reduce_with_steps(raw, &mut steps)
        } else {
            if has_cancellation(&raw) {
                continue;
            }
            raw
        };
        if reduced.len() > max_len {
            continue;
        }
        out.push((reduced, steps));
    }
    out
}

fn has_cancellation(raw: &[i32]) -> bool {
    raw.windows(2).any(|w| w[0] == -w[1])
}

/// Cancels inverse pairs leftmost first, recording each as a step.
fn reduce_with_steps(mut raw: Vec<i32>, steps: &mut Vec<DerivationStep>) -> Vec<i32> {
    loop {
        let Some(pos) = raw.windows(2).position(|w| w[0] == -w[1]) else {
            return raw;
        };
        steps.push(DerivationStep {
            rule: "reduce".into(),
            pos,
            dir: Dir::Fwd,
        });
        raw.drain(pos..pos + 2);
    }
}

/// Bidirectional breadth-first search for a derivation from `lhs` to `rhs`
/// under the rule set. `None` is inconclusive: bounds were exhausted.
pub fn search(
    rules: &RuleSet,
    lhs: &Word,
    rhs: &Word,
    config: &SearchConfig,
) -> Option<DerivationScript> {
    let abc = lhs.alphabet();
    if !crate::word::same_alphabet(abc, rhs.alphabet()) {
        return None;
    }
    let max_len = config
        .max_len
        .unwrap_or(2 * lhs.len().max(rhs.len()) + 8);
    if lhs == rhs {
        return Some(DerivationScript {
            start: lhs.clone(),
            steps: Vec::new(),
            end: rhs.clone(),
        });
    }
    let start = lhs.codes().to_vec();
    let goal = rhs.codes().to_vec();
    let mut fwd_seen: HashMap<Vec<i32>, EdgeInfo> = HashMap::new();
    let mut bwd_seen: HashMap<Vec<i32>, EdgeInfo> = HashMap::new();
    fwd_seen.insert(
        start.clone(),
        EdgeInfo {
            parent: None,
            steps: Vec::new(),
        },
    );
    bwd_seen.insert(
        goal.clone(),
        EdgeInfo {
            parent: None,
            steps: Vec::new(),
        },
    );
    let mut fwd_frontier = vec![start];
    let mut bwd_frontier = vec![goal];
    let (mut fwd_depth, mut bwd_depth) = (0usize, 0usize);
    let mut states = 2usize;

    while fwd_depth + bwd_depth < config.max_steps
        && !fwd_frontier.is_empty()
        && !bwd_frontier.is_empty()
    {
        let expand_fwd = fwd_frontier.len() <= bwd_frontier.len();
        let (frontier, seen, other_seen, depth) = if expand_fwd {
            (&mut fwd_frontier, &mut fwd_seen, &bwd_seen, &mut fwd_depth)
        } else {
            (&mut bwd_frontier, &mut bwd_seen, &fwd_seen, &mut bwd_depth)
        };
        *depth += 1;
        let mut next = Vec::new();
        let mut meet: Option<Vec<i32>> = None;
        'expansion: for node in frontier.iter() {
            for (nb, steps) in neighbors(rules, abc, node, expand_fwd, max_len) {
                if seen.contains_key(&nb) {
                    continue;
                }
                states += 1;
                let hit = other_seen.contains_key(&nb);
                seen.insert(
                    nb.clone(),
                    EdgeInfo {
                        parent: Some(node.clone()),
                        steps,
                    },
                );
                if hit {
                    meet = Some(nb);
                    break 'expansion;
                }
                if states >= config.max_states {
                    break 'expansion;
                }
                next.push(nb);
            }
        }
        if let Some(meet) = meet {
            return Some(assemble(lhs, rhs, &fwd_seen, &bwd_seen, &meet, rules));
        }
        if states >= config.max_states {
            return None;
        }
        *frontier = next;
    }
    None
}

/// Stitches the two half-paths at the meeting word into one script.
fn assemble(
    lhs: &Word,
    rhs: &Word,
    fwd_seen: &HashMap<Vec<i32>, EdgeInfo>,
    bwd_seen: &HashMap<Vec<i32>, EdgeInfo>,
    meet: &[i32],
    rules: &RuleSet,
) -> DerivationScript {
    let mut steps: Vec<DerivationStep> = Vec::new();
    let mut chain: Vec<&EdgeInfo> = Vec::new();
    let mut cur = fwd_seen.get(meet).expect("meet seen forward");
    loop {
        chain.push(cur);
        match &cur.parent {
            Some(p) => cur = fwd_seen.get(p).expect("parent seen"),
            None => break,
        }
    }
    for info in chain.iter().rev() {
        steps.extend(info.steps.iter().cloned());
    }
    // Walk from the meeting word back to rhs, inverting each recorded move.
    let mut cur = bwd_seen.get(meet).expect("meet seen backward");
    loop {
        for s in cur.steps.iter().rev() {
            steps.push(DerivationStep {
                rule: s.rule.clone(),
                pos: s.pos,
                dir: s.dir.flip(),
            });
        }
        match &cur.parent {
            Some(p) => cur = bwd_seen.get(p).expect("parent seen"),
            None => break,
        }
    }
    let script = DerivationScript {
        start: lhs.clone(),
        steps,
        end: rhs.clone(),
    };
    debug_assert!(replay(rules, &script).is_ok(), "search output must replay");
    script
}

/// Adds a relator to a presentation. The certificate must be a passing
/// fundamental-group check of that same relator.
pub fn tietze_add_relator(
    pres: &Presentation,
    rel: Relator,
    cert: &CheckResult,
) -> Result<Presentation, RewriteError> {
    let detail = if cert.id != rel.id {
        Some(format!("certificate is for `{}`", cert.id))
    } else if cert.rep != Rep::Pi1 {
        Some("certificate is not in the fundamental-group representation".into())
    } else if cert.status != Status::Holds {
        Some(format!("certificate status is `{}`", cert.status.as_str()))
    } else {
        None
    };
    if let Some(detail) = detail {
        return Err(RewriteError::MissingCertificate { id: rel.id, detail });
    }
    let mut out = pres.clone();
    out.relators.push(rel);
    Ok(out)
}

/// Adds a generator together with its defining relator `name = definition`.
pub fn tietze_add_generator(
    pres: &Presentation,
    name: &str,
    definition: &Word,
) -> Result<Presentation, RewriteError> {
    if pres.generators.iter().any(|g| g == name) {
        return Err(RewriteError::NameClash { name: name.into() });
    }
    let mut generators = pres.generators.clone();
    generators.push(name.to_string());
    let abc = Alphabet::try_new(generators.clone())
        .map_err(|msg| RewriteError::Parse { line: 0, msg })?;
    let mut relators = Vec::with_capacity(pres.relators.len() + 1);
    for r in &pres.relators {
        relators.push(Relator {
            id: r.id.clone(),
            lhs: Word::parse(&abc, &r.lhs.render())?,
            rhs: Word::parse(&abc, &r.rhs.render())?,
            tag: r.tag.clone(),
        });
    }
    relators.push(Relator {
        id: format!("def({name})"),
        lhs: Word::generator(&abc, name)?,
        rhs: Word::parse(&abc, &definition.render())?,
        tag: "TZ".into(),
    });
    Ok(Presentation {
        name: pres.name.clone(),
        genus: pres.genus,
        generators,
        relators,
    })
}

/// Removes a generator that has a defining relator (one side a single
/// positive occurrence of the generator, the other side free of it),
/// substituting its definition in every other relator.
pub fn tietze_remove_generator(
    pres: &Presentation,
    name: &str,
) -> Result<Presentation, RewriteError> {
    if !pres.generators.iter().any(|g| g == name) {
        return Err(RewriteError::NotDefined { name: name.into() });
    }
    let uses = |w: &Word, n: &str| {
        w.letters().any(|l| w.alphabet().name(l.index) == n)
    };
    let single = |w: &Word, n: &str| {
        w.len() == 1 && {
            let l = w.letters().next().unwrap();
            l.sign > 0 && w.alphabet().name(l.index) == n
        }
    };
    let mut defining: Option<(usize, Word)> = None;
    for (i, r) in pres.relators.iter().enumerate() {
        if single(&r.lhs, name) && !uses(&r.rhs, name) {
            defining = Some((i, r.rhs.clone()));
            break;
        }
        if single(&r.rhs, name) && !uses(&r.lhs, name) {
            defining = Some((i, r.lhs.clone()));
            break;
        }
    }
    let (def_idx, definition) = defining.ok_or(RewriteError::NotDefined {
        name: name.into(),
    })?;
    let generators: Vec<String> = pres
        .generators
        .iter()
        .filter(|g| g.as_str() != name)
        .cloned()
        .collect();
    let abc = Alphabet::try_new(generators.clone())
        .map_err(|msg| RewriteError::Parse { line: 0, msg })?;
    let def_small = Word::parse(&abc, &definition.render())?;
    let substitute = |w: &Word| -> Result<Word, RewriteError> {
        let mut out = Word::identity(&abc);
        for l in w.letters() {
            let n = w.alphabet().name(l.index);
            let piece = if n == name {
                if l.sign > 0 {
                    def_small.clone()
                } else {
                    def_small.invert()
                }
            } else {
                Word::generator(&abc, n)?.power(l.sign as i64)?
            };
            out = out.concat(&piece)?;
        }
        Ok(out)
    };
    let mut relators = Vec::with_capacity(pres.relators.len() - 1);
    for (i, r) in pres.relators.iter().enumerate() {
        if i == def_idx {
            continue;
        }
        relators.push(Relator {
            id: r.id.clone(),
            lhs: substitute(&r.lhs)?,
            rhs: substitute(&r.rhs)?,
            tag: r.tag.clone(),
        });
    }
    Ok(Presentation {
        name: pres.name.clone(),
        genus: pres.genus,
        generators,
        relators,
    })
}
