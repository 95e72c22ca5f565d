//! The genus-one cut-system complex on the homology level: vertices are
//! primitive integer pairs up to sign, edges join pairs with intersection
//! one, and closed edge-paths reduce to a point through an explicit,
//! independently checkable certificate of backtrack cancellations and
//! triangle cuts.
//!
//! At this level a curve is its normalized primitive pair, so algebraic
//! and geometric intersection agree and two classes with intersection
//! zero are equal. That collapses the geometric surgery steps of the
//! source argument: wherever the radius induction meets the determinant
//! zero case, the flanking neighbors coincide and a backtrack
//! cancellation applies.

use std::fmt;

use serde_json::json;

/// Supported coordinate magnitude. Keeping coefficients below 2^31 makes
/// every pairing and transvection exact in 64-bit arithmetic.
const COORD_BOUND: i64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FareyError {
    NotPrimitive { p: i64, q: i64 },
    Zero,
    OutOfRange { p: i128, q: i128 },
    Parse { token: String },
    InvalidPath { detail: String },
    NotClosed,
    NotSquare { detail: String },
    Finding { detail: String },
}

impl fmt::Display for FareyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FareyError::NotPrimitive { p, q } => {
                write!(f, "({p},{q}) is not a primitive pair")
            }
            FareyError::Zero => write!(f, "the zero pair is not a vertex"),
            FareyError::OutOfRange { p, q } => {
                write!(f, "({p},{q}) exceeds the supported coordinate range")
            }
            FareyError::Parse { token } => write!(f, "bad vertex token `{token}`"),
            FareyError::InvalidPath { detail } => write!(f, "invalid path: {detail}"),
            FareyError::NotClosed => write!(f, "path is not closed"),
            FareyError::NotSquare { detail } => write!(f, "not a reducible square: {detail}"),
            FareyError::Finding { detail } => {
                write!(f, "reduction invariant violated (finding): {detail}")
            }
        }
    }
}

impl std::error::Error for FareyError {}

/// A primitive homology class on the torus, up to sign. The stored
/// representative has q > 0, or q = 0 and p = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FareyVertex {
    p: i64,
    q: i64,
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl FareyVertex {
    pub fn new(p: i64, q: i64) -> Result<FareyVertex, FareyError> {
        Self::from_i128(p as i128, q as i128)
    }

    fn from_i128(p: i128, q: i128) -> Result<FareyVertex, FareyError> {
        if p == 0 && q == 0 {
            return Err(FareyError::Zero);
        }
        let bound = COORD_BOUND as i128;
        if p.abs() > bound || q.abs() > bound {
            return Err(FareyError::OutOfRange { p, q });
        }
        let (mut p, mut q) = (p as i64, q as i64);
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(FareyError::NotPrimitive { p, q });
        }
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(FareyVertex { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Parses a `p/q` token.
    pub fn parse(token: &str) -> Result<FareyVertex, FareyError> {
        let err = || FareyError::Parse {
            token: token.to_string(),
        };
        let (p, q) = token.split_once('/').ok_or_else(err)?;
        let p: i64 = p.trim().parse().map_err(|_| err())?;
        let q: i64 = q.trim().parse().map_err(|_| err())?;
        FareyVertex::new(p, q)
    }
}

impl fmt::Display for FareyVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Absolute intersection number |p_v q_w − q_v p_w|.
pub fn inter(v: FareyVertex, w: FareyVertex) -> u64 {
    let d = (v.p as i128) * (w.q as i128) - (v.q as i128) * (w.p as i128);
    d.unsigned_abs() as u64
}

/// Signed determinant pairing, the value added along the axis by a
/// transvection.
fn pairing(v: FareyVertex, w: FareyVertex) -> i64 {
    ((v.p as i128) * (w.q as i128) - (v.q as i128) * (w.p as i128)) as i64
}

/// The transvection along `v` applied to `w`: normalized `w ± ⟨v,w⟩·v`.
///
/// The result is primitive and keeps its intersection number with the
/// axis `v`. Panics if `sign` is not ±1 or the result leaves the
/// supported coordinate range.
pub fn transvect(v: FareyVertex, w: FareyVertex, sign: i32) -> FareyVertex {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    let d = pairing(v, w) as i128;
    let s = sign as i128;
    let p = w.p as i128 + s * d * v.p as i128;
    let q = w.q as i128 + s * d * v.q as i128;
    FareyVertex::from_i128(p, q).expect("transvection result out of range")
}

/// An edge-path: consecutive vertices intersect exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyPath {
    vertices: Vec<FareyVertex>,
}

impl FareyPath {
    pub fn new(vertices: Vec<FareyVertex>) -> Result<FareyPath, FareyError> {
        if vertices.is_empty() {
            return Err(FareyError::InvalidPath {
                detail: "empty vertex list".into(),
            });
        }
        for (i, pair) in vertices.windows(2).enumerate() {
            let k = inter(pair[0], pair[1]);
            if k != 1 {
                return Err(FareyError::InvalidPath {
                    detail: format!(
                        "vertices {} and {} ({} and {}) intersect {} times",
                        i,
                        i + 1,
                        pair[0],
                        pair[1],
                        k
                    ),
                });
            }
        }
        Ok(FareyPath { vertices })
    }

    pub fn vertices(&self) -> &[FareyVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// A closed path repeats its first vertex last; a single vertex is
    /// the constant path.
    pub fn is_closed(&self) -> bool {
        self.vertices.len() == 1 || self.vertices.first() == self.vertices.last()
    }

    pub fn is_constant(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Parses whitespace-separated `p/q` tokens.
    pub fn parse(text: &str) -> Result<FareyPath, FareyError> {
        let vertices = text
            .split_whitespace()
            .map(FareyVertex::parse)
            .collect::<Result<Vec<_>, _>>()?;
        FareyPath::new(vertices)
    }
}

impl fmt::Display for FareyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// One certificate move, applied at a path index.
///
/// `BacktrackCancel` collapses the subpath (v, w, v) starting at `index`
/// to its first vertex. `TriangleCut` removes the middle vertex of the
/// subpath (u, x, w) starting at `index`, citing the triangle it crosses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    BacktrackCancel {
        index: usize,
    },
    TriangleCut {
        index: usize,
        triangle: [FareyVertex; 3],
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    pub moves: Vec<Move>,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        let moves: Vec<serde_json::Value> = self
            .moves
            .iter()
            .map(|m| match m {
                Move::BacktrackCancel { index } => json!({
                    "kind": "backtrack-cancel",
                    "index": index,
                }),
                Move::TriangleCut { index, triangle } => json!({
                    "kind": "triangle-cut",
                    "index": index,
                    "triangle": [
                        triangle[0].to_string(),
                        triangle[1].to_string(),
                        triangle[2].to_string(),
                    ],
                }),
            })
            .collect();
        json!({ "moves": moves })
    }
}

/// Applies one move to a working vertex list. Returns false if the move
/// is illegal there.
fn apply_move(work: &mut Vec<FareyVertex>, mv: &Move) -> bool {
    match mv {
        Move::BacktrackCancel { index } => {
            let i = *index;
            if i + 2 >= work.len() || work[i] != work[i + 2] {
                return false;
            }
            work.drain(i + 1..=i + 2);
            true
        }
        Move::TriangleCut { index, triangle } => {
            let i = *index;
            if i + 2 >= work.len() {
                return false;
            }
            if [work[i], work[i + 1], work[i + 2]] != *triangle {
                return false;
            }
            let [u, x, w] = *triangle;
            if inter(u, x) != 1 || inter(x, w) != 1 || inter(u, w) != 1 {
                return false;
            }
            work.remove(i + 1);
            true
        }
    }
}

/// Checks a certificate against a path with no reference to how it was
/// produced: every move must be legal in sequence, every intermediate
/// path must remain a valid edge-path, and the result must be constant.
pub fn validate_certificate(path: &FareyPath, cert: &Certificate) -> bool {
    let mut work = path.vertices.to_vec();
    if work.windows(2).any(|e| inter(e[0], e[1]) != 1) {
        return false;
    }
    for mv in &cert.moves {
        if !apply_move(&mut work, mv) {
            return false;
        }
        if work.windows(2).any(|e| inter(e[0], e[1]) != 1) {
            return false;
        }
    }
    work.len() == 1
}

/// Pairing-one partner of `v` from the extended Euclid identity.
fn bezout_partner(v: FareyVertex) -> FareyVertex {
    // a*p + b*q = 1; then u = (-b, a) satisfies pairing(v, u) = 1.
    let (mut r0, mut r1) = (v.p, v.q);
    let (mut a0, mut a1) = (1i64, 0i64);
    let (mut b0, mut b1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (a0, a1) = (a1, a0 - k * a1);
        (b0, b1) = (b1, b0 - k * b1);
    }
    // r0 = ±1 since v is primitive; fold its sign into the coefficients.
    let (a, b) = (a0 * r0.signum(), b0 * r0.signum());
    FareyVertex::new(-b, a).expect("partner of a primitive pair is primitive")
}

/// A path from `v` to `w` of logarithmic length: map `v` to 1/0 by a
/// determinant-one change of basis, walk the continued-fraction
/// convergents of the image of `w`, and map back.
pub fn connect(v: FareyVertex, w: FareyVertex) -> FareyPath {
    if v == w {
        return FareyPath {
            vertices: vec![v],
        };
    }
    let u = bezout_partner(v);
    // Rows (a,b) = (u.q, -u.p) and (-v.q, v.p): determinant one, sends v
    // to (1,0).
    let (a, b) = (u.q as i128, -(u.p as i128));
    let (c, d) = (-(v.q as i128), v.p as i128);
    let tp = a * w.p as i128 + b * w.q as i128;
    let tq = c * w.p as i128 + d * w.q as i128;
    let (tp, tq) = if tq < 0 || (tq == 0 && tp < 0) {
        (-tp, -tq)
    } else {
        (tp, tq)
    };
    debug_assert!(tq > 0, "w differs from v, so its image leaves the axis");

    // Convergents of tp/tq, seeded by 1/0.
    let mut images = vec![(1i128, 0i128)];
    let (mut h0, mut k0) = (0i128, 1i128);
    let (mut h1, mut k1) = (1i128, 0i128);
    let (mut num, mut den) = (tp, tq);
    while den != 0 {
        let step = num.div_euclid(den);
        (num, den) = (den, num - step * den);
        let (h, k) = (step * h1 + h0, step * k1 + k0);
        images.push((h, k));
        (h0, k0) = (h1, k1);
        (h1, k1) = (h, k);
    }

    // Inverse map: rows (v.p, -b) and (v.q, a).
    let vertices: Vec<FareyVertex> = images
        .into_iter()
        .map(|(x, y)| {
            let p = v.p as i128 * x - b * y;
            let q = v.q as i128 * x + a * y;
            FareyVertex::from_i128(p, q).expect("convergent image in range")
        })
        .collect();
    FareyPath::new(vertices).expect("convergent path is valid")
}

/// Measure of a closed path around its basepoint: the radius (largest
/// intersection with the first vertex) and the number of interior
/// vertices attaining it.
pub fn path_measure(path: &[FareyVertex]) -> (u64, usize) {
    if path.len() <= 1 {
        return (0, 0);
    }
    let base = path[0];
    let interior = &path[1..path.len() - 1];
    let m = interior.iter().map(|v| inter(base, *v)).max().unwrap_or(0);
    let count = interior.iter().filter(|v| inter(base, **v) == m).count();
    (m, count)
}

/// One reduction move on a closed working path, following the radius
/// induction. Returns the move; the caller applies it.
fn reduction_move(work: &[FareyVertex]) -> Result<Move, FareyError> {
    let base = work[0];
    let (m, _) = path_measure(work);
    if m <= 1 {
        // Radius one: the third vertex is the basepoint again or a
        // neighbor of it, so a move at the front always exists.
        if work[0] == work[2] {
            return Ok(Move::BacktrackCancel { index: 0 });
        }
        if inter(work[0], work[2]) == 1 {
            return Ok(Move::TriangleCut {
                index: 0,
                triangle: [work[0], work[1], work[2]],
            });
        }
        return Err(FareyError::Finding {
            detail: format!(
                "radius-one path with no chord at the front: {} {} {}",
                work[0], work[1], work[2]
            ),
        });
    }
    // Radius at least two: act at the first vertex attaining it.
    let i = work[1..work.len() - 1]
        .iter()
        .position(|v| inter(base, *v) == m)
        .map(|j| j + 1)
        .expect("some interior vertex attains the radius");
    debug_assert!(i >= 2 && i + 1 < work.len());
    let d = inter(work[i - 1], work[i + 1]);
    if d == 0 {
        // Equal flanking classes: the determinant-zero case of the
        // induction collapses to a backtrack on the homology model.
        debug_assert_eq!(work[i - 1], work[i + 1]);
        return Ok(Move::BacktrackCancel { index: i - 1 });
    }
    if d == 1 {
        return Ok(Move::TriangleCut {
            index: i - 1,
            triangle: [work[i - 1], work[i], work[i + 1]],
        });
    }
    Err(FareyError::Finding {
        detail: format!(
            "flanking vertices {} and {} of {} intersect {} times at radius {}",
            work[i - 1],
            work[i + 1],
            work[i],
            d,
            m
        ),
    })
}

/// Reduces a closed path to its basepoint, returning the certificate and
/// the measure after each stage (initial measure first). The measure
/// strictly decreases lexicographically at every move.
pub fn reduce_closed_path_traced(
    path: &FareyPath,
) -> Result<(Certificate, Vec<(u64, usize)>), FareyError> {
    if !path.is_closed() {
        return Err(FareyError::NotClosed);
    }
    let mut work = path.vertices.to_vec();
    let mut moves = Vec::new();
    let mut trace = vec![path_measure(&work)];
    while work.len() > 1 {
        let mv = reduction_move(&work)?;
        let legal = apply_move(&mut work, &mv);
        debug_assert!(legal, "reduction emitted an illegal move");
        if !legal {
            return Err(FareyError::Finding {
                detail: "reduction emitted an illegal move".into(),
            });
        }
        let measure = path_measure(&work);
        let prev = *trace.last().unwrap();
        if measure >= prev {
            return Err(FareyError::Finding {
                detail: format!("measure did not decrease: {prev:?} -> {measure:?}"),
            });
        }
        trace.push(measure);
        moves.push(mv);
    }
    Ok((Certificate { moves }, trace))
}

/// Reduces a closed path to its basepoint.
pub fn reduce_closed_path(path: &FareyPath) -> Result<Certificate, FareyError> {
    reduce_closed_path_traced(path).map(|(cert, _)| cert)
}

/// Splits a closed 4-path whose second and fourth vertices do not
/// intersect. Case analysis on k, the intersection of the first and
/// third vertices:
///
/// * k = 0: both interior vertices already flank equal classes, two
///   backtrack cancellations.
/// * k = 1: the diagonal chord splits the square into the two adjacent
///   triangles, two triangle cuts and a final cancellation.
/// * k > 1: a transvection along the second vertex moves the third
///   strictly closer to the first; the recursion witnesses the descent
///   on the derived square, while the emitted moves use the coincidence
///   of the flanking vertices, the only legal opening on this model.
pub fn split_square(path: &FareyPath) -> Result<Certificate, FareyError> {
    let v = path.vertices();
    if v.len() != 5 || !path.is_closed() {
        return Err(FareyError::NotSquare {
            detail: format!("expected a closed 4-path, got {} vertices", v.len()),
        });
    }
    let k24 = inter(v[1], v[3]);
    if k24 != 0 {
        return Err(FareyError::NotSquare {
            detail: format!("second and fourth vertices intersect {k24} times"),
        });
    }
    debug_assert_eq!(v[1], v[3], "intersection zero means equal classes");
    let k = inter(v[0], v[2]);
    let cert = match k {
        0 => Certificate {
            moves: vec![
                Move::BacktrackCancel { index: 0 },
                Move::BacktrackCancel { index: 0 },
            ],
        },
        1 => Certificate {
            moves: vec![
                Move::TriangleCut {
                    index: 0,
                    triangle: [v[0], v[1], v[2]],
                },
                Move::TriangleCut {
                    index: 0,
                    triangle: [v[0], v[2], v[3]],
                },
                Move::BacktrackCancel { index: 0 },
            ],
        },
        _ => {
            // Descent step of the square lemma: pick the twist sign that
            // lowers the intersection with the basepoint, and recurse on
            // the square with the third vertex replaced.
            let plus = transvect(v[1], v[2], 1);
            let minus = transvect(v[1], v[2], -1);
            let beta = if inter(plus, v[0]) <= inter(minus, v[0]) {
                plus
            } else {
                minus
            };
            if inter(beta, v[0]) >= k {
                return Err(FareyError::Finding {
                    detail: format!(
                        "transvection did not lower the basepoint intersection at {}",
                        v[2]
                    ),
                });
            }
            let derived = FareyPath::new(vec![v[0], v[1], beta, v[3], v[4]])
                .expect("transvection keeps both edges");
            split_square(&derived)?;
            Certificate {
                moves: vec![
                    Move::BacktrackCancel { index: 1 },
                    Move::BacktrackCancel { index: 0 },
                ],
            }
        }
    };
    debug_assert!(validate_certificate(path, &cert));
    Ok(cert)
}

/// A seeded random closed path: a walk over pairing-one neighbors with
/// coefficients kept under `coeff_bound`, closed back to the basepoint
/// 1/0 with [`connect`].
pub fn random_closed_path<R: rand::Rng>(
    rng: &mut R,
    walk_len: usize,
    coeff_bound: i64,
) -> FareyPath {
    let base = FareyVertex::new(1, 0).unwrap();
    let mut vertices = vec![base];
    let mut cur = base;
    for _ in 0..walk_len {
        let u = bezout_partner(cur);
        let mut next = u;
        for _ in 0..16 {
            let t: i64 = rng.gen_range(-2..=2);
            let cand = FareyVertex::new(u.p + t * cur.p, u.q + t * cur.q)
                .expect("neighbor of a primitive pair is primitive");
            if cand.p.abs() <= coeff_bound && cand.q.abs() <= coeff_bound {
                next = cand;
                break;
            }
        }
        vertices.push(next);
        cur = next;
    }
    let closure = connect(cur, base);
    vertices.extend(closure.vertices()[1..].iter().copied());
    FareyPath::new(vertices).expect("walk edges and closure are valid")
}
