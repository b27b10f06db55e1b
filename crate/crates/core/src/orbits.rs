//! Cyclic actions on `P_{h+n,k+n}` around the corner `(h, k)`.
//!
//! Every path from the origin to `(h+n, k+n)` is split against two anchor
//! segments, `L_E` from `(h,k)` to `(h+n,k)` and `L_N` from `(h,k)` to
//! `(h,k+n)`:
//!
//! * paths through the corner go to `Q3` (the tail after the corner has no
//!   `D` step) or `Q4` (it has one);
//! * every other path meets exactly one of the segments in one contiguous
//!   run `bar`; it is `Q1` when `bar` lies on `L_E`, `Q2` when it lies on
//!   `L_N`.
//!
//! `Q1`, `Q2` and `Q4` carry a `Z/n` action whose non-trivial orbits have
//! σ-weight divisible by `Φ_n(q)`. `Q3` has no action; its sum is known in
//! closed form. [`audit`] enumerates a frame exhaustively and checks every
//! one of these claims.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::cyclotomic::CyclotomicTable;
use crate::error::{Error, Result};
use crate::paths::{sigma, LatticePath, PathIter, Point, Step};
use crate::polyring::IntPoly;
use crate::qcore::QBinomialTable;
use crate::qdelannoy::QDelannoyTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CornerFrame {
    pub h: u32,
    pub k: u32,
    pub n: u32,
}

impl CornerFrame {
    pub fn new(h: u32, k: u32, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("frame width n must be positive".into()));
        }
        Ok(CornerFrame { h, k, n })
    }

    pub fn corner(&self) -> Point {
        (self.h, self.k)
    }

    /// `(h+n, k+n)`.
    pub fn target(&self) -> Point {
        (self.h + self.n, self.k + self.n)
    }

    pub fn on_east_segment(&self, p: Point) -> bool {
        p.1 == self.k && p.0 >= self.h && p.0 <= self.h + self.n
    }

    pub fn on_north_segment(&self, p: Point) -> bool {
        p.0 == self.h && p.1 >= self.k && p.1 <= self.k + self.n
    }

    pub fn on_segments(&self, p: Point) -> bool {
        self.on_east_segment(p) || self.on_north_segment(p)
    }

    pub fn paths(&self) -> PathIter {
        let (x, y) = self.target();
        PathIter::new(x, y)
    }

    fn check_path(&self, l: &LatticePath) -> Result<()> {
        if l.end() != self.target() {
            return Err(Error::Frame(format!(
                "path {l} ends at {:?}, frame expects {:?}",
                l.end(),
                self.target()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for CornerFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(h={}, k={}, n={})", self.h, self.k, self.n)
    }
}

/// `check + bar + hat`. For corner paths `bar` is the single point
/// `(h, k)` and `hat` is the whole tail after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub check: LatticePath,
    pub bar: LatticePath,
    pub bar_start: Point,
    pub hat: LatticePath,
    pub through_corner: bool,
}

impl Decomposition {
    pub fn bar_end(&self) -> Point {
        (
            self.bar_start.0 + self.bar.x(),
            self.bar_start.1 + self.bar.y(),
        )
    }

    pub fn reassemble(&self) -> LatticePath {
        self.check.concat(&self.bar).concat(&self.hat)
    }
}

pub fn decompose(l: &LatticePath, f: &CornerFrame) -> Result<Decomposition> {
    f.check_path(l)?;
    let pts = l.points();
    if let Some(i) = pts.iter().position(|&p| p == f.corner()) {
        return Ok(Decomposition {
            check: l.slice(0..i),
            bar: LatticePath::empty(),
            bar_start: f.corner(),
            hat: l.slice(i..l.len()),
            through_corner: true,
        });
    }
    let first = pts
        .iter()
        .position(|&p| f.on_segments(p))
        .ok_or_else(|| Error::Frame(format!("path {l} never meets the anchor segments of {f}")))?;
    let mut last = first;
    while last + 1 < pts.len() && f.on_segments(pts[last + 1]) {
        last += 1;
    }
    if pts[last + 1..].iter().any(|&p| f.on_segments(p)) {
        return Err(Error::Frame(format!(
            "path {l} meets the anchor segments twice"
        )));
    }
    Ok(Decomposition {
        check: l.slice(0..first),
        bar: l.slice(first..last),
        bar_start: pts[first],
        hat: l.slice(last..l.len()),
        through_corner: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PathClass {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl PathClass {
    pub const ALL: [PathClass; 4] = [PathClass::Q1, PathClass::Q2, PathClass::Q3, PathClass::Q4];

    pub fn has_action(self) -> bool {
        self != PathClass::Q3
    }
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn class_of(d: &Decomposition, f: &CornerFrame) -> PathClass {
    if d.through_corner {
        if d.hat.steps().contains(&Step::D) {
            PathClass::Q4
        } else {
            PathClass::Q3
        }
    } else if f.on_east_segment(d.bar_end()) {
        PathClass::Q1
    } else {
        PathClass::Q2
    }
}

pub fn classify(l: &LatticePath, f: &CornerFrame) -> Result<PathClass> {
    Ok(class_of(&decompose(l, f)?, f))
}

/// The segment an action permutes, cut into `n` blocks.
///
/// `Q1`: blocks of `hat`, each an `N`/`D` step then an `E`-run.
/// `Q2`: blocks of `hat`, each an `E`/`D` step then an `N`-run.
/// `Q4`: `leading` is the `N`-run `v_0` after the corner, then blocks
/// `e_j + v_j` with `e_j` a single `E`/`D` step and `v_j` an `N`-run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub class: PathClass,
    /// `check + bar`, untouched by the action.
    pub prefix: LatticePath,
    pub leading: LatticePath,
    pub blocks: Vec<LatticePath>,
}

impl BlockDecomposition {
    pub fn reassemble(&self) -> LatticePath {
        let mut steps = self.prefix.steps().to_vec();
        steps.extend_from_slice(self.leading.steps());
        for b in &self.blocks {
            steps.extend_from_slice(b.steps());
        }
        LatticePath::new(steps)
    }

    /// First step of each block (`e_1..e_n` for `Q4`).
    pub fn lead_steps(&self) -> Vec<Step> {
        self.blocks.iter().map(|b| b.steps()[0]).collect()
    }

    /// Number of `D` steps among the block leads (`s_l` for `Q4`).
    pub fn diagonal_leads(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.steps()[0] == Step::D)
            .count()
    }
}

/// Split `seg` into a leading run of non-lead steps and blocks that each
/// start at a lead step.
fn split_at_leads(
    seg: &LatticePath,
    is_lead: impl Fn(Step) -> bool,
) -> (LatticePath, Vec<LatticePath>) {
    let mut leading = Vec::new();
    let mut blocks: Vec<Vec<Step>> = Vec::new();
    for &s in seg.steps() {
        if is_lead(s) {
            blocks.push(vec![s]);
        } else if let Some(b) = blocks.last_mut() {
            b.push(s);
        } else {
            leading.push(s);
        }
    }
    (
        LatticePath::new(leading),
        blocks.into_iter().map(LatticePath::new).collect(),
    )
}

fn blocks_of(d: &Decomposition, class: PathClass, f: &CornerFrame) -> Result<BlockDecomposition> {
    let (leading, blocks) = match class {
        PathClass::Q1 => split_at_leads(&d.hat, |s| s.dy() == 1),
        PathClass::Q2 | PathClass::Q4 => split_at_leads(&d.hat, |s| s.dx() == 1),
        PathClass::Q3 => {
            return Err(Error::Class("Q3 paths carry no block decomposition".into()));
        }
    };
    if blocks.len() != f.n as usize {
        return Err(Error::Frame(format!(
            "{class} segment splits into {} blocks, expected {}",
            blocks.len(),
            f.n
        )));
    }
    Ok(BlockDecomposition {
        class,
        prefix: d.check.concat(&d.bar),
        leading,
        blocks,
    })
}

pub fn blocks(l: &LatticePath, f: &CornerFrame) -> Result<BlockDecomposition> {
    let d = decompose(l, f)?;
    let class = class_of(&d, f);
    blocks_of(&d, class, f)
}

fn act_on_blocks(b: &BlockDecomposition) -> LatticePath {
    let n = b.blocks.len();
    let mut steps = b.prefix.steps().to_vec();
    steps.extend_from_slice(b.leading.steps());
    match b.class {
        PathClass::Q4 => {
            let leads = b.lead_steps();
            for (j, block) in b.blocks.iter().enumerate() {
                steps.push(leads[(j + n - 1) % n]);
                steps.extend_from_slice(&block.steps()[1..]);
            }
        }
        _ => {
            for j in 0..n {
                steps.extend_from_slice(b.blocks[(j + n - 1) % n].steps());
            }
        }
    }
    LatticePath::new(steps)
}

/// One application of the class's generator.
///
/// `Q1`/`Q2` move the last block of `hat` to the front. `Q4` moves the
/// lead labels one slot forward (`e_n` into the first slot) and leaves
/// the `N`-runs in place.
pub fn act(l: &LatticePath, f: &CornerFrame) -> Result<LatticePath> {
    Ok(act_on_blocks(&blocks(l, f)?))
}

/// The exact change `σ(act(l)) - σ(l)` predicted from the blocks of `l`.
///
/// `Q1`: `n·x(last block) - x(hat)`; `Q2`: `y(hat) - n·y(last block)`;
/// `Q4`: `s_l - n·[e_n = D]`.
pub fn predicted_sigma_shift(b: &BlockDecomposition) -> i64 {
    let n = b.blocks.len() as i64;
    let last = b.blocks.last().expect("n >= 1 blocks");
    let (hx, hy) = b.blocks.iter().fold(
        (b.leading.x() as i64, b.leading.y() as i64),
        |(x, y), blk| (x + blk.x() as i64, y + blk.y() as i64),
    );
    match b.class {
        PathClass::Q1 => n * last.x() as i64 - hx,
        PathClass::Q2 => hy - n * last.y() as i64,
        PathClass::Q4 => {
            let s = b.diagonal_leads() as i64;
            s - if last.steps()[0] == Step::D { n } else { 0 }
        }
        PathClass::Q3 => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub class: PathClass,
    pub members: Vec<LatticePath>,
    pub weight: IntPoly,
    /// `s_l` for `Q4` orbits.
    pub diagonal_leads: Option<usize>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The orbit of `l` under its class action, in iteration order starting at `l`.
pub fn orbit(l: &LatticePath, f: &CornerFrame) -> Result<Orbit> {
    let b = blocks(l, f)?;
    let class = b.class;
    let diagonal_leads = (class == PathClass::Q4).then(|| b.diagonal_leads());
    let mut members = vec![l.clone()];
    let mut cur = act_on_blocks(&b);
    while cur != *l {
        if members.len() >= f.n as usize {
            return Err(Error::Class(format!(
                "{class} action on {l} does not return within n = {} steps",
                f.n
            )));
        }
        members.push(cur.clone());
        cur = act(&cur, f)?;
    }
    let mut counts: BTreeMap<u64, i64> = BTreeMap::new();
    for m in &members {
        *counts.entry(m.sigma()).or_default() += 1;
    }
    let weight = counts
        .into_iter()
        .map(|(e, c)| IntPoly::term(c, e as usize))
        .sum();
    Ok(Orbit {
        class,
        members,
        weight,
        diagonal_leads,
    })
}

/// Per-class sums over the fixed points (all of `Q3`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FixedPointSums {
    pub s1: IntPoly,
    pub s2: IntPoly,
    pub s3: IntPoly,
    pub s4: IntPoly,
}

impl FixedPointSums {
    pub fn get(&self, class: PathClass) -> &IntPoly {
        match class {
            PathClass::Q1 => &self.s1,
            PathClass::Q2 => &self.s2,
            PathClass::Q3 => &self.s3,
            PathClass::Q4 => &self.s4,
        }
    }

    fn get_mut(&mut self, class: PathClass) -> &mut IntPoly {
        match class {
            PathClass::Q1 => &mut self.s1,
            PathClass::Q2 => &mut self.s2,
            PathClass::Q3 => &mut self.s3,
            PathClass::Q4 => &mut self.s4,
        }
    }

    pub fn total(&self) -> IntPoly {
        PathClass::ALL.iter().map(|&c| self.get(c).clone()).sum()
    }
}

fn is_fixed(l: &LatticePath, d: &Decomposition, class: PathClass, f: &CornerFrame) -> Result<bool> {
    if class == PathClass::Q3 {
        return Ok(true);
    }
    Ok(act_on_blocks(&blocks_of(d, class, f)?) == *l)
}

/// Fixed-point sums by exhaustive enumeration of the frame.
pub fn fixed_point_sums(f: &CornerFrame) -> Result<FixedPointSums> {
    let mut sums = FixedPointSums::default();
    let mut it = f.paths();
    while let Some(steps) = it.next_steps() {
        let l = LatticePath::new(steps.to_vec());
        let d = decompose(&l, f)?;
        let class = class_of(&d, f);
        if is_fixed(&l, &d, class, f)? {
            *sums.get_mut(class) += &IntPoly::monomial(l.sigma() as usize);
        }
    }
    Ok(sums)
}

/// Closed forms of the fixed-point sums:
///
/// ```text
/// S1 = q^{n(h+n)} (D_q(h+n, k) - D_q(h, k))
/// S2 = D_q(h, k+n) - q^{nh} D_q(h, k)
/// S3 = q^{nh} [2n, n]_q D_q(h, k)
/// S4 = q^{nh + n(n+1)/2} D_q(h, k)
/// ```
pub fn fixed_point_sums_closed_form(f: &CornerFrame, dq: &mut QDelannoyTable) -> FixedPointSums {
    let (h, k, n) = (f.h as i64, f.k as i64, f.n as i64);
    let base = dq.get(h, k).clone();
    let nh = (n * h) as usize;
    let central = QBinomialTable::up_to(2 * n as usize)
        .get(2 * n as usize, n)
        .clone();
    FixedPointSums {
        s1: (dq.get(h + n, k) - &base).shift((n * (h + n)) as usize),
        s2: dq.get(h, k + n) - base.shift(nh),
        s3: (central * &base).shift(nh),
        s4: base.shift(nh + (n * (n + 1) / 2) as usize),
    }
}

/// Class under a literal reading of the segment definitions: `bar` is the
/// maximal run on `L_E ∪ L_N` (the corner included), `Q1` when it ends on
/// `L_E` past the corner, `Q2` when it starts on `L_N` past the corner,
/// otherwise `Q3`/`Q4` by the `D` steps of `hat`.
pub fn literal_class(l: &LatticePath, f: &CornerFrame) -> Result<PathClass> {
    f.check_path(l)?;
    let pts = l.points();
    let first = pts
        .iter()
        .position(|&p| f.on_segments(p))
        .ok_or_else(|| Error::Frame(format!("path {l} never meets the anchor segments of {f}")))?;
    let mut last = first;
    while last + 1 < pts.len() && f.on_segments(pts[last + 1]) {
        last += 1;
    }
    let (start, end) = (pts[first], pts[last]);
    Ok(if end.1 == f.k && end.0 > f.h {
        PathClass::Q1
    } else if start.0 == f.h && start.1 > f.k {
        PathClass::Q2
    } else if l.steps()[last..].contains(&Step::D) {
        PathClass::Q4
    } else {
        PathClass::Q3
    })
}

/// Named checks performed by [`audit`].
pub const CHECKS: [&str; 12] = [
    "partition",
    "decomposition",
    "sigma-reassembly",
    "action-closure",
    "action-bijective",
    "action-period",
    "sigma-shift",
    "orbit-vanishing",
    "fixed-point-characterization",
    "fixed-sum-identities",
    "s3-q-lucas",
    "grand-total",
];

const MAX_LISTED_VIOLATIONS: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSizeCount {
    pub class: PathClass,
    pub size: usize,
    pub orbits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumResidues {
    pub class: PathClass,
    /// Σ q^σ over the whole class.
    pub class_sum_residue: IntPoly,
    /// Σ q^σ over the fixed points of the class.
    pub fixed_sum: IntPoly,
    pub fixed_sum_residue: IntPoly,
    pub closed_form: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub frame: CornerFrame,
    pub total_paths: u64,
    pub class_counts: BTreeMap<PathClass, u64>,
    pub fixed_point_counts: BTreeMap<PathClass, u64>,
    pub orbit_sizes: Vec<OrbitSizeCount>,
    pub sums: Vec<SumResidues>,
    pub total_residue: IntPoly,
    pub expected_residue: IntPoly,
    pub checks: Vec<CheckTally>,
    pub violation_count: u64,
    pub violations: Vec<String>,
    /// Paths the literal segment reading would put in a different class.
    pub literal_reading_disagreements: u64,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Ledger {
    tallies: BTreeMap<&'static str, (u64, u64)>,
    listed: Vec<String>,
    total: u64,
}

impl Ledger {
    fn new() -> Self {
        Ledger {
            tallies: CHECKS.iter().map(|&c| (c, (0, 0))).collect(),
            listed: Vec::new(),
            total: 0,
        }
    }

    fn record(&mut self, check: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let t = self.tallies.get_mut(check).expect("registered check");
        t.0 += 1;
        if !ok {
            t.1 += 1;
            self.total += 1;
            if self.listed.len() < MAX_LISTED_VIOLATIONS {
                self.listed.push(format!("{check}: {}", detail()));
            }
        }
    }

    fn tallies(&self) -> Vec<CheckTally> {
        CHECKS
            .iter()
            .map(|&c| {
                let (checked, violations) = self.tallies[c];
                CheckTally {
                    name: c.to_string(),
                    checked,
                    violations,
                }
            })
            .collect()
    }
}

/// Independent membership predicates, one per class.
fn membership(l: &LatticePath, f: &CornerFrame) -> [bool; 4] {
    let pts = l.points();
    let corner_at = pts.iter().position(|&p| p == f.corner());
    let through = corner_at.is_some();
    let tail_has_d = corner_at.is_some_and(|i| l.steps()[i..].contains(&Step::D));
    let east = pts.iter().any(|&p| f.on_east_segment(p) && p != f.corner());
    let north = pts
        .iter()
        .any(|&p| f.on_north_segment(p) && p != f.corner());
    [
        !through && east,
        !through && north,
        through && !tail_has_d,
        through && tail_has_d,
    ]
}

fn class_index(c: PathClass) -> usize {
    c as usize
}

/// Exhaustively audit one frame.
pub fn audit(f: &CornerFrame) -> Result<AuditReport> {
    let n = f.n as usize;
    let mut phi = CyclotomicTable::new();
    phi.phi(f.n as u64)?;
    let reduce = |p: &IntPoly| phi.reduce_cached(p, f.n as u64).expect("Φ_n populated");
    let mut ledger = Ledger::new();

    let mut class_counts: BTreeMap<PathClass, u64> =
        PathClass::ALL.iter().map(|&c| (c, 0)).collect();
    let mut fixed_counts = class_counts.clone();
    let mut class_sums: [Vec<u64>; 4] = Default::default();
    let mut fixed_sums = FixedPointSums::default();
    let mut total_paths = 0u64;
    let mut literal_disagreements = 0u64;

    // image under the action, for the bijectivity and orbit passes
    let mut image: HashMap<LatticePath, LatticePath> = HashMap::new();
    let mut acting: Vec<(LatticePath, PathClass)> = Vec::new();

    let mut it = f.paths();
    while let Some(steps) = it.next_steps() {
        total_paths += 1;
        let l = LatticePath::new(steps.to_vec());
        let sig = l.sigma();

        let d = match decompose(&l, f) {
            Ok(d) => d,
            Err(e) => {
                ledger.record("decomposition", false, || e.to_string());
                continue;
            }
        };
        ledger.record("decomposition", d.reassemble() == l, || {
            format!("{l}: parts do not reassemble")
        });
        let bar_ok = d
            .bar
            .points_from(d.bar_start)
            .iter()
            .all(|&p| f.on_segments(p));
        ledger.record("decomposition", bar_ok, || {
            format!("{l}: bar leaves the segments")
        });

        let reassembled = sigma(d.check.steps())
            + sigma(d.bar.steps())
            + sigma(d.hat.steps())
            + d.check.x() as u64 * d.bar.y() as u64
            + (d.check.x() + d.bar.x()) as u64 * d.hat.y() as u64;
        ledger.record("sigma-reassembly", reassembled == sig, || {
            format!("{l}: σ = {sig}, reassembled {reassembled}")
        });

        let class = class_of(&d, f);
        let member = membership(&l, f);
        let exactly_one = member.iter().filter(|&&b| b).count() == 1 && member[class_index(class)];
        ledger.record("partition", exactly_one, || {
            format!("{l}: membership {member:?}, class {class}")
        });

        if !literal_class(&l, f).is_ok_and(|c| c == class) {
            literal_disagreements += 1;
        }

        *class_counts.get_mut(&class).unwrap() += 1;
        let bucket = &mut class_sums[class_index(class)];
        if bucket.len() <= sig as usize {
            bucket.resize(sig as usize + 1, 0);
        }
        bucket[sig as usize] += 1;

        if class == PathClass::Q3 {
            *fixed_counts.get_mut(&class).unwrap() += 1;
            fixed_sums.s3 += &IntPoly::monomial(sig as usize);
            continue;
        }

        let b = match blocks_of(&d, class, f) {
            Ok(b) => b,
            Err(e) => {
                ledger.record("decomposition", false, || format!("{l}: {e}"));
                continue;
            }
        };
        let leading_ok = class == PathClass::Q4 || b.leading.is_empty();
        ledger.record("decomposition", leading_ok, || {
            format!("{l}: {class} hat has a leading run")
        });

        let next = act_on_blocks(&b);
        let next_class = classify(&next, f);
        ledger.record(
            "action-closure",
            next_class.as_ref().ok() == Some(&class),
            || format!("{l} ({class}) maps to {next} ({next_class:?})"),
        );

        let shift = next.sigma() as i64 - sig as i64;
        let predicted = predicted_sigma_shift(&b);
        ledger.record("sigma-shift", shift == predicted, || {
            format!("{l} ({class}): σ shift {shift}, law gives {predicted}")
        });

        let mut cur = next.clone();
        let mut period_ok = true;
        for _ in 1..n {
            match act(&cur, f) {
                Ok(c) => cur = c,
                Err(_) => {
                    period_ok = false;
                    break;
                }
            }
        }
        ledger.record("action-period", period_ok && cur == l, || {
            format!("{l}: n-th iterate is not the identity")
        });

        let fixed = next == l;
        let characterized = match class {
            PathClass::Q1 => d.hat.x() == 0,
            PathClass::Q2 => d.hat.y() == 0,
            PathClass::Q4 => b.diagonal_leads() == n,
            PathClass::Q3 => unreachable!(),
        };
        ledger.record(
            "fixed-point-characterization",
            fixed == characterized,
            || format!("{l} ({class}): fixed = {fixed}, characterization = {characterized}"),
        );
        if fixed {
            *fixed_counts.get_mut(&class).unwrap() += 1;
            *fixed_sums.get_mut(class) += &IntPoly::monomial(sig as usize);
        }

        image.insert(l.clone(), next);
        acting.push((l, class));
    }

    let distinct_images: HashSet<&LatticePath> = image.values().collect();
    let onto_domain = image.values().all(|p| image.contains_key(p));
    ledger.record(
        "action-bijective",
        distinct_images.len() == image.len() && onto_domain,
        || format!("{} images for {} paths", distinct_images.len(), image.len()),
    );

    let mut sizes: BTreeMap<(PathClass, usize), u64> = BTreeMap::new();
    let mut seen: HashSet<&LatticePath> = HashSet::new();
    for (l, class) in &acting {
        if seen.contains(l) {
            continue;
        }
        let mut members = vec![l];
        seen.insert(l);
        let mut cur = &image[l];
        while cur != l && members.len() <= n {
            seen.insert(cur);
            members.push(cur);
            match image.get(cur) {
                Some(next) => cur = next,
                None => break,
            }
        }
        let size = members.len();
        ledger.record("action-period", cur == l && n.is_multiple_of(size), || {
            format!("{l} ({class}): orbit of size {size} for n = {n}")
        });
        *sizes.entry((*class, size)).or_default() += 1;
        if size > 1 {
            let weight: IntPoly = members
                .iter()
                .map(|m| IntPoly::monomial(m.sigma() as usize))
                .sum();
            let r = reduce(&weight);
            ledger.record("orbit-vanishing", r.is_zero(), || {
                format!("{l} ({class}): orbit weight {weight} ≡ {r}")
            });
        }
    }

    let mut dq = QDelannoyTable::up_to((f.h + f.n) as usize, (f.k + f.n) as usize);
    let closed = fixed_point_sums_closed_form(f, &mut dq);
    let mut sums = Vec::new();
    for class in PathClass::ALL {
        let class_sum = IntPoly::from_coeffs(
            class_sums[class_index(class)]
                .iter()
                .map(|&c| c.into())
                .collect(),
        );
        let got = fixed_sums.get(class);
        let want = closed.get(class);
        ledger.record("fixed-sum-identities", got == want, || {
            format!("{class}: fixed sum {got}, closed form {want}")
        });
        let class_residue = reduce(&class_sum);
        let fixed_residue = reduce(got);
        // orbit vanishing summed over the class
        ledger.record("orbit-vanishing", class_residue == fixed_residue, || {
            format!("{class}: class sum ≡ {class_residue}, fixed sum ≡ {fixed_residue}")
        });
        sums.push(SumResidues {
            class,
            class_sum_residue: class_residue,
            fixed_sum: got.clone(),
            fixed_sum_residue: fixed_residue,
            closed_form: want.clone(),
        });
    }

    let (h, k, ni) = (f.h as i64, f.k as i64, f.n as i64);
    let base = dq.get(h, k).clone();
    let s3_target = reduce(&base.scale(&2.into()));
    let s3_residue = reduce(&fixed_sums.s3);
    ledger.record("s3-q-lucas", s3_residue == s3_target, || {
        format!("S3 ≡ {s3_residue}, 2·D_q(h,k) ≡ {s3_target}")
    });

    let total: IntPoly = class_sums
        .iter()
        .flat_map(|v| v.iter().enumerate())
        .map(|(e, &c)| IntPoly::term(c, e))
        .sum();
    let total_residue = reduce(&total);
    let mut rhs = dq.get(h + ni, k).clone();
    rhs += dq.get(h, k + ni);
    if f.n % 2 == 1 {
        rhs += &base;
    } else {
        rhs -= &base;
    }
    let expected_residue = reduce(&rhs);
    ledger.record("grand-total", total_residue == expected_residue, || {
        format!("Σ q^σ ≡ {total_residue}, expected {expected_residue}")
    });
    let fixed_total_residue = reduce(&fixed_sums.total());
    ledger.record("grand-total", total_residue == fixed_total_residue, || {
        format!("Σ q^σ ≡ {total_residue}, fixed points sum to {fixed_total_residue}")
    });
    ledger.record("grand-total", *dq.get(h + ni, k + ni) == total, || {
        "Σ q^σ differs from D_q(h+n, k+n)".to_string()
    });

    Ok(AuditReport {
        frame: *f,
        total_paths,
        class_counts,
        fixed_point_counts: fixed_counts,
        orbit_sizes: sizes
            .into_iter()
            .map(|((class, size), orbits)| OrbitSizeCount {
                class,
                size,
                orbits,
            })
            .collect(),
        sums,
        total_residue,
        expected_residue,
        checks: ledger.tallies(),
        violation_count: ledger.total,
        violations: ledger.listed,
        literal_reading_disagreements: literal_disagreements,
    })
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "frame {}: {} paths", self.frame, self.total_paths)?;
        for (class, count) in &self.class_counts {
            writeln!(
                f,
                "  {class}: {count} paths, {} fixed",
                self.fixed_point_counts[class]
            )?;
        }
        for o in &self.orbit_sizes {
            writeln!(f, "  orbits {} size {}: {}", o.class, o.size, o.orbits)?;
        }
        for s in &self.sums {
            writeln!(
                f,
                "  {} fixed sum ≡ {} (mod Φ_{})",
                s.class, s.fixed_sum_residue, self.frame.n
            )?;
        }
        writeln!(
            f,
            "  total ≡ {}, expected ≡ {}",
            self.total_residue, self.expected_residue
        )?;
        writeln!(
            f,
            "  literal-reading disagreements: {}",
            self.literal_reading_disagreements
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  check {:<30} {:>8} checked {:>4} violations",
                c.name, c.checked, c.violations
            )?;
        }
        for v in &self.violations {
            writeln!(f, "  violation: {v}")?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    fn frame(h: u32, k: u32, n: u32) -> CornerFrame {
        CornerFrame::new(h, k, n).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&path("EDNNE"), &frame(1, 1, 2)).unwrap();
        assert_eq!(d.check, path("ED"));
        assert!(d.bar.is_empty());
        assert_eq!(d.bar_start, (2, 1));
        assert_eq!(d.hat, path("NNE"));
        assert!(!d.through_corner);

        let d = decompose(&path("EDD"), &frame(1, 0, 2)).unwrap();
        assert!(d.through_corner);
        assert_eq!(d.check, path("E"));
        assert_eq!(d.hat, path("DD"));
    }

    #[test]
    fn decompose_keeps_runs_on_the_segment() {
        let f = frame(1, 1, 3);
        let d = decompose(&path("EDEENNN"), &f).unwrap();
        assert_eq!(
            (d.check.clone(), d.bar.clone(), d.hat.clone()),
            (path("ED"), path("EE"), path("NNN"))
        );
        assert_eq!(d.bar_start, (2, 1));
        assert_eq!(d.bar_end(), (4, 1));
        assert_eq!(class_of(&d, &f), PathClass::Q1);

        let d = decompose(&path("NDNNEEE"), &f).unwrap();
        assert_eq!(
            (d.check.clone(), d.bar.clone(), d.hat.clone()),
            (path("ND"), path("NN"), path("EEE"))
        );
        assert_eq!(class_of(&d, &f), PathClass::Q2);
    }

    #[test]
    fn decompose_rejects_wrong_endpoint() {
        assert!(matches!(
            decompose(&path("EN"), &frame(1, 1, 1)),
            Err(Error::Frame(_))
        ));
        assert!(CornerFrame::new(1, 1, 0).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&path("EDNNE"), &frame(1, 1, 2)).unwrap(),
            PathClass::Q1
        );
        assert_eq!(
            classify(&path("EDD"), &frame(1, 0, 2)).unwrap(),
            PathClass::Q4
        );
        assert_eq!(
            classify(&path("EN"), &frame(0, 0, 1)).unwrap(),
            PathClass::Q3
        );
        assert_eq!(
            classify(&path("NEE"), &frame(1, 0, 1)).unwrap(),
            PathClass::Q2
        );
    }

    #[test]
    fn block_examples() {
        let b = blocks(&path("EDNNE"), &frame(1, 1, 2)).unwrap();
        assert_eq!(b.blocks, vec![path("N"), path("NE")]);
        assert!(b.leading.is_empty());

        let b = blocks(&path("EDD"), &frame(1, 0, 2)).unwrap();
        assert!(b.leading.is_empty());
        assert_eq!(b.blocks, vec![path("D"), path("D")]);
        assert_eq!(b.diagonal_leads(), 2);

        // bar is the point (1, 2) on L_N, hat is EE
        let b = blocks(&path("NDEE"), &frame(1, 0, 2)).unwrap();
        assert_eq!(b.class, PathClass::Q2);
        assert_eq!(b.blocks, vec![path("E"), path("E")]);

        assert!(matches!(
            blocks(&path("EN"), &frame(0, 0, 1)),
            Err(Error::Class(_))
        ));
    }

    #[test]
    fn act_examples() {
        let f = frame(1, 1, 2);
        let l = path("EDNNE");
        assert_eq!(l.sigma(), 6);
        let m = act(&l, &f).unwrap();
        assert_eq!(m, path("EDNEN"));
        assert_eq!(m.sigma(), 7);
        let b = blocks(&l, &f).unwrap();
        assert_eq!(predicted_sigma_shift(&b), 1);

        let diag = path("EDD");
        assert_eq!(act(&diag, &frame(1, 0, 2)).unwrap(), diag);

        assert!(matches!(
            act(&path("NE"), &frame(0, 0, 1)),
            Err(Error::Class(_))
        ));
    }

    #[test]
    fn orbit_examples() {
        let f = frame(1, 1, 2);
        let o = orbit(&path("EDNNE"), &f).unwrap();
        assert_eq!(o.size(), 2);
        assert_eq!(o.weight, IntPoly::monomial(6) + IntPoly::monomial(7));
        assert!(CyclotomicTable::new()
            .reduce_mod(&o.weight, 2)
            .unwrap()
            .is_zero());

        let o = orbit(&path("EDD"), &frame(1, 0, 2)).unwrap();
        assert_eq!(o.size(), 1);
        assert_eq!(o.weight, IntPoly::monomial(path("EDD").sigma() as usize));

        // tail from (1,0) with e-labels (D, E)
        let l = path("EDEN");
        let f = frame(1, 0, 2);
        let b = blocks(&l, &f).unwrap();
        assert_eq!(b.lead_steps(), vec![Step::D, Step::E]);
        let o = orbit(&l, &f).unwrap();
        assert_eq!(o.size(), 2);
        assert_eq!(o.diagonal_leads, Some(1));
        assert!(CyclotomicTable::new()
            .reduce_mod(&o.weight, 2)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn fixed_point_sum_examples() {
        let mut dq = QDelannoyTable::new();
        let s = fixed_point_sums(&frame(0, 0, 1)).unwrap();
        assert_eq!(s.s3, IntPoly::from_i64s(&[1, 1]));
        assert_eq!(s.s4, IntPoly::q());
        assert!(s.s1.is_zero() && s.s2.is_zero());
        assert_eq!(s, fixed_point_sums_closed_form(&frame(0, 0, 1), &mut dq));

        for n in 1..4 {
            let s = fixed_point_sums(&frame(1, 0, n)).unwrap();
            assert!(s.s1.is_zero());
        }

        let s = fixed_point_sums(&frame(1, 1, 2)).unwrap();
        assert_eq!(s.s4, IntPoly::from_i64s(&[1, 2]).shift(5));
    }

    #[test]
    fn audit_small_frames() {
        let r = audit(&frame(0, 0, 1)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.total_paths, 3);
        assert_eq!(r.total_residue, IntPoly::constant(3));

        let r = audit(&frame(0, 0, 2)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(
            r.class_counts[&PathClass::Q1] + r.class_counts[&PathClass::Q2],
            0
        );
        assert_eq!(r.total_paths, 13);
        assert_eq!(r.total_residue, IntPoly::one());

        let r = audit(&frame(1, 1, 2)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.total_paths, 63);
    }

    #[test]
    fn literal_reading_differs_on_corner_riders() {
        // through (1,1) then east along L_E
        let f = frame(1, 1, 2);
        let l = path("DEENN");
        assert_eq!(classify(&l, &f).unwrap(), PathClass::Q3);
        assert_eq!(literal_class(&l, &f).unwrap(), PathClass::Q1);
    }
}
