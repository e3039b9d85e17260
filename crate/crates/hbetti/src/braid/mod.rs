//! Braid words and their closures as combinatorial diagrams.
//!
//! Letters are signed generator indices: `i` is `σ_i`, `-i` is `σ_i⁻¹`.
//! Strands are read top to bottom; the closure joins bottom endpoints back
//! to the top.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} is out of range for {strands} strands")]
    OutOfRange { letter: i32, strands: usize },
    #[error("cannot parse braid letter `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::OutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Whitespace-separated signed integers, e.g. `"1 1 -2"`.
    pub fn parse(text: &str, strands: usize) -> Result<Self, BraidError> {
        let letters = text
            .split_whitespace()
            .map(|t| i32::from_str(t).map_err(|_| BraidError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, letters)
    }

    pub fn empty(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| i64::from(l.signum())).sum()
    }

    /// Word text in the CLI grammar.
    pub fn word_text(&self) -> String {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        parts.join(" ")
    }

    /// The permutation of strand positions: position `p` at the top ends at
    /// `perm[p]` at the bottom.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = start position
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// Word with `letter` inserted before position `at`.
    pub fn inserted(&self, at: usize, letter: i32) -> Result<Self, BraidError> {
        let mut letters = self.letters.clone();
        letters.insert(at, letter);
        Self::new(self.strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e in B{}", self.strands);
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        write!(f, "{} in B{}", parts.join(" "), self.strands)
    }
}

/// Side by side: the letters of `b` are re-indexed past the strands of `a`.
pub fn split_union(a: &BraidWord, b: &BraidWord) -> BraidWord {
    let shift = a.strands as i32;
    let mut letters = a.letters.clone();
    letters.extend(b.letters.iter().map(|&l| l + shift * l.signum()));
    BraidWord { strands: a.strands + b.strands, letters }
}

/// One crossing of a closed braid. Edge ids refer to [`ClosedBraidDiagram::edges`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Position of the letter in the word.
    pub index: usize,
    /// Generator index `i` of `σ_i^{±1}`.
    pub generator: usize,
    pub sign: i32,
    /// Incoming edges at strand positions `i` and `i + 1`.
    pub in_left: usize,
    pub in_right: usize,
    /// Outgoing edges at strand positions `i` and `i + 1`.
    pub out_left: usize,
    pub out_right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: usize,
    pub component: usize,
    /// Strand position the edge runs along.
    pub position: usize,
    /// Crossing the edge leaves from, `None` for a crossingless circle.
    pub start: Option<usize>,
    pub end: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedBraidDiagram {
    pub word: BraidWord,
    pub edges: Vec<Edge>,
    pub crossings: Vec<Crossing>,
    pub writhe: i64,
    pub strands: usize,
    pub components: usize,
    pub circles: usize,
}

impl ClosedBraidDiagram {
    pub fn is_positive(&self) -> bool {
        self.word.is_positive()
    }

    /// Edge ids of each component.
    pub fn component_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.components];
        for e in &self.edges {
            out[e.component].push(e.id);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Closes a braid. Each crossing owns its two outgoing edges; a strand
/// position touched by no letter becomes a one-edge circle. Edges are
/// renumbered so that edge `l` lies on component `l` for `l < m`.
pub fn close(w: &BraidWord) -> ClosedBraidDiagram {
    let n = w.len();
    let b = w.strands;
    // raw edges: 2t (left out of crossing t), 2t + 1 (right out), then circles
    let mut last_at: Vec<Option<usize>> = vec![None; b];
    for (t, &l) in w.letters.iter().enumerate() {
        let i = l.unsigned_abs() as usize - 1;
        last_at[i] = Some(2 * t);
        last_at[i + 1] = Some(2 * t + 1);
    }
    let circle_positions: Vec<usize> = (0..b).filter(|&p| last_at[p].is_none()).collect();
    let raw_count = 2 * n + circle_positions.len();

    let mut current = last_at.clone();
    let mut raw_crossings = Vec::with_capacity(n);
    for (t, &l) in w.letters.iter().enumerate() {
        let i = l.unsigned_abs() as usize - 1;
        let in_l = current[i].expect("position is touched");
        let in_r = current[i + 1].expect("position is touched");
        current[i] = Some(2 * t);
        current[i + 1] = Some(2 * t + 1);
        raw_crossings.push((t, i, l.signum(), in_l, in_r, 2 * t, 2 * t + 1));
    }

    let mut parent: Vec<usize> = (0..raw_count).collect();
    for &(_, _, _, in_l, in_r, out_l, out_r) in &raw_crossings {
        // the strand entering on the left leaves on the right, and vice versa
        let (a, b2) = (find(&mut parent, in_l), find(&mut parent, out_r));
        parent[a.max(b2)] = a.min(b2);
        let (a, b2) = (find(&mut parent, in_r), find(&mut parent, out_l));
        parent[a.max(b2)] = a.min(b2);
    }
    let roots: Vec<usize> = (0..raw_count).map(|e| find(&mut parent, e)).collect();
    let mut reps: Vec<usize> = roots.clone();
    reps.sort_unstable();
    reps.dedup();
    let comp_of_root = |r: usize| reps.binary_search(&r).unwrap();

    // representatives (smallest raw id per component) first, then the rest
    // grouped by component
    let mut order: Vec<usize> = reps.clone();
    let mut rest: Vec<usize> = (0..raw_count).filter(|e| roots[*e] != *e).collect();
    rest.sort_by_key(|&e| (comp_of_root(roots[e]), e));
    order.extend(rest);
    let mut new_id = vec![0; raw_count];
    for (k, &e) in order.iter().enumerate() {
        new_id[e] = k;
    }

    let mut edges: Vec<Edge> = Vec::with_capacity(raw_count);
    for &e in &order {
        let (position, start, end) = if e < 2 * n {
            let t = e / 2;
            let i = w.letters[t].unsigned_abs() as usize - 1;
            let pos = i + e % 2;
            let end = raw_crossings
                .iter()
                .find(|c| c.3 == e || c.4 == e)
                .map(|c| c.0);
            (pos, Some(t), end)
        } else {
            (circle_positions[e - 2 * n], None, None)
        };
        edges.push(Edge { id: new_id[e], component: comp_of_root(roots[e]), position, start, end });
    }
    let crossings = raw_crossings
        .into_iter()
        .map(|(t, i, s, in_l, in_r, out_l, out_r)| Crossing {
            index: t,
            generator: i + 1,
            sign: s,
            in_left: new_id[in_l],
            in_right: new_id[in_r],
            out_left: new_id[out_l],
            out_right: new_id[out_r],
        })
        .collect();
    ClosedBraidDiagram {
        word: w.clone(),
        edges,
        crossings,
        writhe: w.writhe(),
        strands: b,
        components: reps.len(),
        circles: circle_positions.len(),
    }
}

/// Positive words known to close to the same link.
pub fn markov_test_pairs() -> Vec<(BraidWord, BraidWord)> {
    let w = |b: usize, ls: &[i32]| BraidWord::new(b, ls.to_vec()).expect("valid fixture");
    vec![
        (w(1, &[]), w(2, &[1])),
        (w(2, &[1, 1, 1]), w(3, &[1, 1, 1, 2])),
        (w(2, &[1, 1, 1]), w(3, &[1, 2, 1, 2])),
        (w(2, &[1, 1]), w(3, &[1, 1, 2])),
    ]
}

#[cfg(test)]
mod tests;
