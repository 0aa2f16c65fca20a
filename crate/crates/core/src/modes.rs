//! Exact integer combinatorics of resonant sextuples and classification of
//! tangential mode sets.
//!
//! A sextuple `(j1,j2,j3 | j4,j5,j6)` is resonant when both the momentum sum
//! `j1+j2+j3 = j4+j5+j6` and the energy sum `j1²+j2²+j3² = j4²+j5²+j6²` hold.
//! All arithmetic is exact machine-integer arithmetic; enumeration boxes are
//! capped so squares stay far inside the i64 range.

use std::collections::HashMap;

use crate::{Error, Result};

/// Default safety bound for enumeration boxes.
pub const MAX_BOX: i64 = 32;

/// A resonance candidate: three "creation" indices and three "annihilation"
/// indices, stored in canonical order (each triple sorted ascending, triples
/// ordered lexicographically) so equality is set-equality of the monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sextuple {
    j: [i64; 6],
}

impl Sextuple {
    pub fn new(creation: [i64; 3], annihilation: [i64; 3]) -> Self {
        let mut a = creation;
        let mut b = annihilation;
        a.sort_unstable();
        b.sort_unstable();
        if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        Self {
            j: [a[0], a[1], a[2], b[0], b[1], b[2]],
        }
    }

    pub fn creation(&self) -> [i64; 3] {
        [self.j[0], self.j[1], self.j[2]]
    }

    pub fn annihilation(&self) -> [i64; 3] {
        [self.j[3], self.j[4], self.j[5]]
    }

    pub fn indices(&self) -> [i64; 6] {
        self.j
    }

    /// Translate every index by `k`. Resonance is preserved.
    pub fn translated(&self, k: i64) -> Self {
        Self::new(
            [self.j[0] + k, self.j[1] + k, self.j[2] + k],
            [self.j[3] + k, self.j[4] + k, self.j[5] + k],
        )
    }

    /// Flip the sign of every index. Resonance is preserved.
    pub fn negated(&self) -> Self {
        Self::new(
            [-self.j[0], -self.j[1], -self.j[2]],
            [-self.j[3], -self.j[4], -self.j[5]],
        )
    }
}

impl std::fmt::Display for Sextuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{}|{},{},{})",
            self.j[0], self.j[1], self.j[2], self.j[3], self.j[4], self.j[5]
        )
    }
}

/// A finite strictly increasing set of integer Fourier modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentialSet {
    modes: Vec<i64>,
}

impl TangentialSet {
    /// Build from arbitrary integers; duplicates are rejected.
    pub fn new(modes: &[i64]) -> Result<Self> {
        let mut m = modes.to_vec();
        m.sort_unstable();
        if m.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("duplicate mode in tangential set".into()));
        }
        Ok(Self { modes: m })
    }

    /// The working instance {-2,-1,1,2}.
    pub fn standard() -> Self {
        Self {
            modes: vec![-2, -1, 1, 2],
        }
    }

    pub fn contains(&self, j: i64) -> bool {
        self.modes.binary_search(&j).is_ok()
    }

    pub fn modes(&self) -> &[i64] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }
}

fn sum3(t: [i64; 3]) -> i64 {
    t[0] + t[1] + t[2]
}

fn sumsq3(t: [i64; 3]) -> i64 {
    t[0] * t[0] + t[1] * t[1] + t[2] * t[2]
}

/// Momentum and energy conservation, exact.
pub fn is_resonant(s: &Sextuple) -> bool {
    let a = s.creation();
    let b = s.annihilation();
    sum3(a) == sum3(b) && sumsq3(a) == sumsq3(b)
}

/// A resonant sextuple is trivial (action preserving) when its triples agree
/// as multisets. Rejects non-resonant input.
pub fn is_trivial(s: &Sextuple) -> Result<bool> {
    if !is_resonant(s) {
        return Err(Error::Precondition(format!("{s} is not resonant")));
    }
    Ok(s.creation() == s.annihilation())
}

/// Membership filter for [`enumerate_resonances`].
///
/// With `set` present and `in_set = None`, every index must lie in the set;
/// with `in_set = Some(k)`, exactly `k` of the six indices (counted with
/// multiplicity) must lie in the set.
#[derive(Debug, Clone, Default)]
pub struct ResonanceFilter {
    pub set: Option<TangentialSet>,
    pub in_set: Option<usize>,
    pub nontrivial_only: bool,
}

impl ResonanceFilter {
    pub fn all_in(set: TangentialSet) -> Self {
        Self {
            set: Some(set),
            in_set: None,
            nontrivial_only: false,
        }
    }

    pub fn split(set: TangentialSet, inside: usize) -> Self {
        Self {
            set: Some(set),
            in_set: Some(inside),
            nontrivial_only: false,
        }
    }

    pub fn nontrivial(mut self) -> Self {
        self.nontrivial_only = true;
        self
    }

    fn accepts(&self, s: &Sextuple) -> bool {
        if self.nontrivial_only && s.creation() == s.annihilation() {
            return false;
        }
        if let Some(set) = &self.set {
            let inside = s.indices().iter().filter(|&&j| set.contains(j)).count();
            match self.in_set {
                Some(k) => inside == k,
                None => inside == 6,
            }
        } else {
            true
        }
    }
}

/// All canonical resonant sextuples with every |j_i| <= box_bound matching the
/// filter, in deterministic (sorted) order.
pub fn enumerate_resonances(box_bound: i64, filter: &ResonanceFilter) -> Result<Vec<Sextuple>> {
    if box_bound < 0 || box_bound > MAX_BOX {
        return Err(Error::BoxTooLarge(box_bound, MAX_BOX));
    }
    // Group sorted triples by (sum, sum of squares); resonances are exactly
    // the pairs within one bucket.
    let mut triples: Vec<[i64; 3]> = Vec::new();
    for a in -box_bound..=box_bound {
        for b in a..=box_bound {
            for c in b..=box_bound {
                triples.push([a, b, c]);
            }
        }
    }
    let mut buckets: HashMap<(i64, i64), Vec<[i64; 3]>> = HashMap::new();
    for t in triples {
        buckets.entry((sum3(t), sumsq3(t))).or_default().push(t);
    }
    let mut out = Vec::new();
    for group in buckets.values() {
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i..] {
                let s = Sextuple::new(a, b);
                if filter.accepts(&s) {
                    out.push(s);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Completeness: for every quintuple in S^5 the unique k solving the momentum
/// equation either fails the energy equation or lies in S. The sixth index is
/// determined, so no enumeration box is needed.
pub fn is_complete(set: &TangentialSet) -> bool {
    completeness_witness(set).is_none()
}

/// A resonant sextuple with five indices in S and the determined sixth
/// outside S, if one exists.
pub fn completeness_witness(set: &TangentialSet) -> Option<Sextuple> {
    let m = set.modes();
    for &j1 in m {
        for &j2 in m {
            for &j3 in m {
                for &j4 in m {
                    for &j5 in m {
                        let k = j1 + j2 + j3 - j4 - j5;
                        if set.contains(k) {
                            continue;
                        }
                        if sumsq3([j1, j2, j3]) == sumsq3([j4, j5, k]) {
                            return Some(Sextuple::new([j1, j2, j3], [j4, j5, k]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// A complete set is action preserving when every resonant sextuple in S^6 is
/// trivial. Rejects incomplete sets.
pub fn is_action_preserving(set: &TangentialSet) -> Result<bool> {
    if let Some(w) = completeness_witness(set) {
        return Err(Error::NotComplete(format!("witness {w}")));
    }
    let m = set.modes();
    for &j1 in m {
        for &j2 in m {
            for &j3 in m {
                for &j4 in m {
                    for &j5 in m {
                        let k = j1 + j2 + j3 - j4 - j5;
                        if !set.contains(k) {
                            continue;
                        }
                        let s = Sextuple::new([j1, j2, j3], [j4, j5, k]);
                        if is_resonant(&s) && s.creation() != s.annihilation() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}
