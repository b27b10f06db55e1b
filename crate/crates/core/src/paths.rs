//! Lattice paths over the steps `E = (1,0)`, `N = (0,1)`, `D = (1,1)` and
//! the `σ` statistic.
//!
//! Paths are stored as step sequences, origin-relative. `σ(l)` is the sum,
//! over the steps that raise `y`, of the x-coordinate of the step's
//! endpoint when the path starts at the origin. Concatenation satisfies
//! `σ(a + b) = σ(a) + σ(b) + x(a)·y(b)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::Error;
use crate::polyring::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    E,
    N,
    D,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::E, Step::N, Step::D];

    pub fn dx(self) -> u32 {
        match self {
            Step::E | Step::D => 1,
            Step::N => 0,
        }
    }

    pub fn dy(self) -> u32 {
        match self {
            Step::N | Step::D => 1,
            Step::E => 0,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
            Step::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Step> {
        match c {
            'E' => Some(Step::E),
            'N' => Some(Step::N),
            'D' => Some(Step::D),
            _ => None,
        }
    }
}

/// A lattice point.
pub type Point = (u32, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn x(&self) -> u32 {
        self.steps.iter().map(|s| s.dx()).sum()
    }

    pub fn y(&self) -> u32 {
        self.steps.iter().map(|s| s.dy()).sum()
    }

    pub fn end(&self) -> Point {
        (self.x(), self.y())
    }

    pub fn sigma(&self) -> u64 {
        sigma(&self.steps)
    }

    /// Number of `D` steps.
    pub fn diagonals(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::D).count()
    }

    pub fn concat(&self, other: &LatticePath) -> LatticePath {
        let mut steps = Vec::with_capacity(self.len() + other.len());
        steps.extend_from_slice(&self.steps);
        steps.extend_from_slice(&other.steps);
        LatticePath { steps }
    }

    /// Sub-path of steps `range`, itself origin-relative.
    pub fn slice(&self, range: std::ops::Range<usize>) -> LatticePath {
        LatticePath::new(self.steps[range].to_vec())
    }

    /// The `len() + 1` points visited when starting from `start`.
    pub fn points_from(&self, start: Point) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.len() + 1);
        let mut cur = start;
        pts.push(cur);
        for s in &self.steps {
            cur = (cur.0 + s.dx(), cur.1 + s.dy());
            pts.push(cur);
        }
        pts
    }

    pub fn points(&self) -> Vec<Point> {
        self.points_from((0, 0))
    }
}

/// `σ` of a raw step slice taken from the origin.
pub fn sigma(steps: &[Step]) -> u64 {
    let mut x = 0u64;
    let mut total = 0u64;
    for s in steps {
        x += s.dx() as u64;
        if s.dy() == 1 {
            total += x;
        }
    }
    total
}

pub fn concat(a: &LatticePath, b: &LatticePath) -> LatticePath {
    a.concat(b)
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| {
                Step::from_letter(c)
                    .ok_or_else(|| Error::Domain(format!("invalid step letter {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LatticePath::new)
    }
}

/// Streaming enumeration of `P_{h,k}`.
///
/// Paths come out in lexicographic order with `E < N < D`, i.e. the order
/// of a depth-first search that tries `E`, then `N`, then `D` at each
/// position. Use [`PathIter::next_steps`] to walk without allocating.
#[derive(Clone, Debug)]
pub struct PathIter {
    target: Point,
    steps: Vec<Step>,
    started: bool,
    done: bool,
}

impl PathIter {
    pub fn new(h: u32, k: u32) -> Self {
        PathIter {
            target: (h, k),
            steps: Vec::with_capacity((h + k) as usize),
            started: false,
            done: false,
        }
    }

    fn feasible(step: Step, rx: u32, ry: u32) -> bool {
        rx >= step.dx() && ry >= step.dy()
    }

    fn complete_greedily(&mut self, mut rx: u32, mut ry: u32) {
        while rx > 0 {
            self.steps.push(Step::E);
            rx -= 1;
        }
        while ry > 0 {
            self.steps.push(Step::N);
            ry -= 1;
        }
    }

    /// Advance and borrow the next path's steps.
    pub fn next_steps(&mut self) -> Option<&[Step]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.complete_greedily(self.target.0, self.target.1);
            return Some(&self.steps);
        }
        // remaining displacement after the current prefix
        let (mut rx, mut ry) = (0u32, 0u32);
        while let Some(last) = self.steps.pop() {
            rx += last.dx();
            ry += last.dy();
            let next = Step::ALL
                .iter()
                .copied()
                .filter(|&s| s > last)
                .find(|&s| Self::feasible(s, rx, ry));
            if let Some(s) = next {
                self.steps.push(s);
                self.complete_greedily(rx - s.dx(), ry - s.dy());
                return Some(&self.steps);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        self.next_steps().map(|s| LatticePath::new(s.to_vec()))
    }
}

pub fn enumerate_paths(h: u32, k: u32) -> PathIter {
    PathIter::new(h, k)
}

/// `Σ_{l ∈ P_{h,k}} q^{σ(l)}` by exhaustive enumeration.
pub fn sigma_poly(h: u32, k: u32) -> IntPoly {
    let mut counts = vec![0u64; (h as usize) * (k as usize) + 1];
    let mut it = PathIter::new(h, k);
    while let Some(steps) = it.next_steps() {
        counts[sigma(steps) as usize] += 1;
    }
    IntPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(path("EEEE").sigma(), 0);
        assert_eq!(path("D").sigma(), 1);
        assert_eq!(path("EDN").sigma(), 4);
        assert_eq!(path("").sigma(), 0);
        assert_eq!(path("NNN").sigma(), 0);
    }

    #[test]
    fn concat_examples() {
        let l = path("EDN");
        assert_eq!(l.concat(&LatticePath::empty()), l);
        let en = path("E").concat(&path("N"));
        assert_eq!(en, path("EN"));
        assert_eq!(en.sigma(), 1);
        assert_eq!(path("D").concat(&path("D")).sigma(), 3);
    }

    #[test]
    fn enumeration_examples() {
        let p00: Vec<_> = enumerate_paths(0, 0).collect();
        assert_eq!(p00, vec![LatticePath::empty()]);
        let p11: Vec<String> = enumerate_paths(1, 1).map(|p| p.to_string()).collect();
        assert_eq!(p11, vec!["EN", "NE", "D"]);
        assert_eq!(enumerate_paths(2, 2).count(), 13);
        assert_eq!(
            enumerate_paths(3, 0)
                .map(|p| p.to_string())
                .collect::<Vec<_>>(),
            vec!["EEE"]
        );
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all: Vec<_> = enumerate_paths(3, 4).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|p| p.end() == (3, 4)));
    }

    #[test]
    fn sigma_poly_examples() {
        assert_eq!(sigma_poly(1, 1), IntPoly::from_i64s(&[1, 2]));
        for h in 0..5 {
            assert_eq!(sigma_poly(h, 0), IntPoly::one());
        }
        assert_eq!(sigma_poly(2, 2), IntPoly::from_i64s(&[1, 2, 4, 4, 2]));
    }

    #[test]
    fn text_form() {
        assert_eq!(path("EDN").to_string(), "EDN");
        assert!("EXN".parse::<LatticePath>().is_err());
        assert_eq!(path("EDN").points(), vec![(0, 0), (1, 0), (2, 1), (2, 2)]);
    }
}
