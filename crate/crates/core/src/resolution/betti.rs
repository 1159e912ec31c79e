use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::ResolutionError;

/// Graded Betti numbers `β_{i,j}`; zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BettiJson", try_from = "BettiJson")]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    betti: Vec<(usize, u32, usize)>,
}

impl From<BettiTable> for BettiJson {
    fn from(t: BettiTable) -> Self {
        BettiJson {
            betti: t.entries.into_iter().map(|((i, j), c)| (i, j, c)).collect(),
        }
    }
}

impl TryFrom<BettiJson> for BettiTable {
    type Error = ResolutionError;

    fn try_from(j: BettiJson) -> Result<Self, Self::Error> {
        let mut t = BettiTable::new();
        for (i, d, c) in j.betti {
            if (d as usize) < i {
                return Err(ResolutionError::Parse(format!("β_{{{i},{d}}} lies below row 0")));
            }
            t.add(i, d, c);
        }
        Ok(t)
    }
}

impl BettiTable {
    pub fn new() -> Self {
        BettiTable::default()
    }

    pub fn add(&mut self, i: usize, j: u32, count: usize) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(i, j, β_{i,j})`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Index of the last row, `max (j - i)`.
    pub fn regularity(&self) -> u32 {
        self.entries.keys().map(|&(i, j)| j - i as u32).max().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, c)| c).sum()
    }

    /// `Σ_{i,j} (-1)^i β_{i,j} t^j`, the numerator of the Hilbert series.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut out = vec![0i64; top + 1];
        for (&(i, j), &c) in &self.entries {
            let c = c as i64;
            out[j as usize] += if i % 2 == 0 { c } else { -c };
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// The table under `(i, j) -> (c - i, s - j)` for the given `c` and `s`.
    pub fn dual(&self, c: usize, s: u32) -> BettiTable {
        let mut t = BettiTable::new();
        for (&(i, j), &n) in &self.entries {
            t.add(c - i, s - j, n);
        }
        t
    }

    /// Gorenstein symmetry around the last column.
    pub fn is_self_dual(&self) -> bool {
        let c = self.length();
        let s = self.entries.keys().filter(|k| k.0 == c).map(|k| k.1).max().unwrap_or(0);
        self.entries.keys().all(|&(i, j)| i <= c && j <= s) && self.dual(c, s) == *self
    }

    /// Text layout with one row per `r = j - i` and one column per `i`:
    /// ```text
    /// degree | 0  1  2
    /// -------+--------
    ///      0 | 1  -  -
    ///      1 | -  3  -
    /// ```
    pub fn render(&self) -> String {
        let cols = self.length() + 1;
        let rows = self.regularity() as usize + 1;
        let cell = |i: usize, r: usize| -> String {
            match self.get(i, (i + r) as u32) {
                0 => "-".to_string(),
                n => n.to_string(),
            }
        };
        let mut width = vec![1usize; cols];
        for (i, w) in width.iter_mut().enumerate() {
            *w = (*w).max(i.to_string().len());
            for r in 0..rows {
                *w = (*w).max(cell(i, r).len());
            }
        }
        let label = "degree".len();
        let mut out = String::new();
        let header: Vec<String> = (0..cols).map(|i| format!("{:>w$}", i, w = width[i])).collect();
        writeln!(out, "{:>label$} | {}", "degree", header.join(" ")).unwrap();
        let line_len = header.join(" ").len();
        writeln!(out, "{}-+-{}", "-".repeat(label), "-".repeat(line_len)).unwrap();
        for r in 0..rows {
            let row: Vec<String> = (0..cols).map(|i| format!("{:>w$}", cell(i, r), w = width[i])).collect();
            writeln!(out, "{:>label$} | {}", r, row.join(" ")).unwrap();
        }
        out
    }

    /// Inverse of [`BettiTable::render`].
    pub fn parse(text: &str) -> Result<BettiTable, ResolutionError> {
        let err = |m: String| ResolutionError::Parse(m);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| err("empty table".into()))?;
        let (_, cols) = header.split_once('|').ok_or_else(|| err("missing header".into()))?;
        let cols: Vec<usize> = cols
            .split_whitespace()
            .map(|c| c.parse().map_err(|_| err(format!("bad column label {c:?}"))))
            .collect::<Result<_, _>>()?;
        let mut t = BettiTable::new();
        for line in lines {
            if line.chars().all(|c| c == '-' || c == '+' || c == ' ') {
                continue;
            }
            let (r, cells) = line.split_once('|').ok_or_else(|| err(format!("bad row {line:?}")))?;
            let r: usize = r.trim().parse().map_err(|_| err(format!("bad row label {:?}", r.trim())))?;
            let cells: Vec<&str> = cells.split_whitespace().collect();
            if cells.len() != cols.len() {
                return Err(err(format!("row {r} has {} cells, expected {}", cells.len(), cols.len())));
            }
            for (&i, c) in cols.iter().zip(cells) {
                if c == "-" {
                    continue;
                }
                let n: usize = c.parse().map_err(|_| err(format!("bad entry {c:?}")))?;
                t.add(i, (i + r) as u32, n);
            }
        }
        Ok(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("betti table serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn koszul3() -> BettiTable {
        let mut t = BettiTable::new();
        t.add(0, 0, 1);
        t.add(1, 2, 3);
        t.add(2, 4, 3);
        t.add(3, 6, 1);
        t
    }

    #[test]
    fn layout() {
        let t = koszul3();
        let s = t.render();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "degree | 0 1 2 3");
        assert_eq!(lines[2], "     0 | 1 - - -");
        assert_eq!(lines[3], "     1 | - 3 - -");
        assert_eq!(lines[4], "     2 | - - 3 -");
        assert_eq!(lines[5], "     3 | - - - 1");
        assert_eq!(t.hilbert_numerator(), vec![1, 0, -3, 0, 3, 0, -1]);
        assert!(t.is_self_dual());
        assert_eq!(t.to_json(), serde_json::json!({"betti": [[0, 0, 1], [1, 2, 3], [2, 4, 3], [3, 6, 1]]}));
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(cells in proptest::collection::vec((0usize..7, 0u32..5, 0usize..700), 0..20)) {
            let mut t = BettiTable::new();
            for (i, r, c) in cells {
                t.add(i, i as u32 + r, c);
            }
            prop_assert_eq!(BettiTable::parse(&t.render()).unwrap(), t.clone());
            let back: BettiTable = serde_json::from_value(t.to_json()).unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
