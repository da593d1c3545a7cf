//! Range-of-bytes policy: how many low bits of a cover byte may carry payload.
//!
//! A [`RangeTable`] partitions byte values `0..=255` into contiguous ranges,
//! each with a replacement depth of 0 to 4 bits. Every range must be aligned
//! to `2^depth` on both ends. With that alignment, overwriting the low `depth`
//! bits of a byte can never move it into another range, so the extractor
//! recovers the same depth from the stego byte that the embedder saw in the
//! cover byte.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const MAX_DEPTH: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeEntry {
    pub low: u8,
    pub high: u8,
    pub depth: u8,
}

impl RangeEntry {
    pub const fn new(low: u8, high: u8, depth: u8) -> Self {
        RangeEntry { low, high, depth }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    Inverted { index: usize, low: u8, high: u8 },
    DepthTooLarge { index: usize, depth: u8 },
    Misaligned { index: usize, low: u8, high: u8, depth: u8 },
    DoesNotStartAtZero { first_low: u8 },
    DoesNotEndAt255 { last_high: u8 },
    Gap { after: usize, missing_from: u8, missing_to: u8 },
    Overlap { index: usize, with: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Empty => write!(f, "table has no entries"),
            Violation::Inverted { index, low, high } => {
                write!(f, "entry {index}: low {low} > high {high}")
            }
            Violation::DepthTooLarge { index, depth } => {
                write!(f, "entry {index}: depth {depth} exceeds {MAX_DEPTH}")
            }
            Violation::Misaligned { index, low, high, depth } => write!(
                f,
                "entry {index}: [{low},{high}] is not aligned to 2^{depth} (closure would break)"
            ),
            Violation::DoesNotStartAtZero { first_low } => {
                write!(f, "first range starts at {first_low}, not 0")
            }
            Violation::DoesNotEndAt255 { last_high } => {
                write!(f, "last range ends at {last_high}, not 255")
            }
            Violation::Gap { after, missing_from, missing_to } => write!(
                f,
                "values {missing_from}..={missing_to} after entry {after} are not covered"
            ),
            Violation::Overlap { index, with } => {
                write!(f, "entry {index} overlaps or precedes entry {with}")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("invalid range table: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// Checks every structural rule and returns all violations found.
pub fn validate(entries: &[RangeEntry]) -> Vec<Violation> {
    let mut out = Vec::new();
    if entries.is_empty() {
        out.push(Violation::Empty);
        return out;
    }

    for (i, e) in entries.iter().enumerate() {
        if e.low > e.high {
            out.push(Violation::Inverted { index: i, low: e.low, high: e.high });
        }
        if e.depth > MAX_DEPTH {
            out.push(Violation::DepthTooLarge { index: i, depth: e.depth });
        } else {
            let align = 1u16 << e.depth;
            if u16::from(e.low) % align != 0 || (u16::from(e.high) + 1) % align != 0 {
                out.push(Violation::Misaligned {
                    index: i,
                    low: e.low,
                    high: e.high,
                    depth: e.depth,
                });
            }
        }
    }

    if entries[0].low != 0 {
        out.push(Violation::DoesNotStartAtZero { first_low: entries[0].low });
    }
    let last = entries[entries.len() - 1];
    if last.high != 255 {
        out.push(Violation::DoesNotEndAt255 { last_high: last.high });
    }

    for (i, pair) in entries.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        let next = u16::from(a.high) + 1;
        let start = u16::from(b.low);
        if start > next {
            out.push(Violation::Gap {
                after: i,
                missing_from: next as u8,
                missing_to: b.low - 1,
            });
        } else if start < next {
            out.push(Violation::Overlap { index: i + 1, with: i });
        }
    }
    out
}

/// A validated range table with a per-value depth lookup.
#[derive(Clone, PartialEq, Eq)]
pub struct RangeTable {
    entries: Vec<RangeEntry>,
    lookup: [u8; 256],
}

impl fmt::Debug for RangeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RangeTable").field("entries", &self.entries).finish()
    }
}

impl RangeTable {
    pub fn new(entries: Vec<RangeEntry>) -> Result<Self, TableError> {
        let violations = validate(&entries);
        if !violations.is_empty() {
            return Err(TableError::Invalid(violations));
        }
        let mut lookup = [0u8; 256];
        for e in &entries {
            for v in e.low..=e.high {
                lookup[usize::from(v)] = e.depth;
            }
        }
        Ok(RangeTable { entries, lookup })
    }

    /// The built-in table: `[0,15]→0, [16,31]→1, [32,63]→3, [64,127]→4, [128,255]→4`.
    pub fn default_table() -> Self {
        RangeTable::new(vec![
            RangeEntry::new(0, 15, 0),
            RangeEntry::new(16, 31, 1),
            RangeEntry::new(32, 63, 3),
            RangeEntry::new(64, 127, 4),
            RangeEntry::new(128, 255, 4),
        ])
        .expect("built-in table is valid")
    }

    pub fn entries(&self) -> &[RangeEntry] {
        &self.entries
    }

    #[inline]
    pub fn classify(&self, b: u8) -> u8 {
        self.lookup[usize::from(b)]
    }

    /// Depth for every byte value, indexed by value.
    pub fn depths(&self) -> &[u8; 256] {
        &self.lookup
    }

    /// Sum of depths over the first `usable_len` bytes of `data`.
    pub fn capacity_bits(&self, data: &[u8], usable_len: usize) -> u64 {
        let n = usable_len.min(data.len());
        data[..n].iter().map(|&b| u64::from(self.classify(b))).sum()
    }

    /// Capacity over the pyramid-covered prefix of `data`.
    pub fn block_capacity_bits(&self, data: &[u8]) -> u64 {
        self.capacity_bits(data, crate::pyramid::usable_len(data.len()))
    }
}

impl Default for RangeTable {
    fn default() -> Self {
        Self::default_table()
    }
}

/// Text form: one `low high depth` triple per line; `#` starts a comment.
impl FromStr for RangeTable {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for (n, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(TableError::Parse {
                    line: n + 1,
                    msg: format!("expected `low high depth`, got {} fields", fields.len()),
                });
            }
            let num = |s: &str| {
                s.parse::<u8>().map_err(|e| TableError::Parse {
                    line: n + 1,
                    msg: format!("{s:?}: {e}"),
                })
            };
            entries.push(RangeEntry::new(num(fields[0])?, num(fields[1])?, num(fields[2])?));
        }
        RangeTable::new(entries)
    }
}

impl fmt::Display for RangeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{} {} {}", e.low, e.high, e.depth)?;
        }
        Ok(())
    }
}

/// Replaces the low `k` bits of `b` with the low `k` bits of `pattern`.
#[inline]
pub fn replace_low_bits(b: u8, pattern: u8, k: u8) -> u8 {
    if k == 0 {
        return b;
    }
    let mask = ((1u16 << k) - 1) as u8;
    (b & !mask) | (pattern & mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_classification() {
        let t = RangeTable::default_table();
        assert_eq!(t.classify(63), 3);
        assert_eq!(t.classify(0), 0);
        assert_eq!(t.classify(15), 0);
        assert_eq!(t.classify(16), 1);
        assert_eq!(t.classify(200), 4);
        assert!(validate(t.entries()).is_empty());
    }

    #[test]
    fn closure_holds_exhaustively_for_default() {
        let t = RangeTable::default_table();
        for b in 0..=255u8 {
            let k = t.classify(b);
            for p in 0..(1u8 << k) {
                assert_eq!(t.classify(replace_low_bits(b, p, k)), k, "b={b} p={p}");
            }
        }
    }

    #[test]
    fn depth_bound_violation() {
        let mut e = RangeTable::default_table().entries().to_vec();
        e[2].depth = 5;
        assert_eq!(validate(&e), vec![Violation::DepthTooLarge { index: 2, depth: 5 }]);
    }

    #[test]
    fn closure_alignment_violation() {
        let e = vec![
            RangeEntry::new(0, 9, 0),
            RangeEntry::new(10, 40, 2),
            RangeEntry::new(41, 255, 0),
        ];
        let v = validate(&e);
        assert!(v.contains(&Violation::Misaligned { index: 1, low: 10, high: 40, depth: 2 }));
    }

    #[test]
    fn coverage_violations() {
        let e = vec![RangeEntry::new(1, 10, 0), RangeEntry::new(20, 254, 0)];
        let v = validate(&e);
        assert!(v.contains(&Violation::DoesNotStartAtZero { first_low: 1 }));
        assert!(v.contains(&Violation::DoesNotEndAt255 { last_high: 254 }));
        assert!(v.contains(&Violation::Gap { after: 0, missing_from: 11, missing_to: 19 }));

        let e = vec![RangeEntry::new(0, 100, 0), RangeEntry::new(50, 255, 0)];
        assert_eq!(validate(&e), vec![Violation::Overlap { index: 1, with: 0 }]);
        assert_eq!(validate(&[]), vec![Violation::Empty]);
    }

    #[test]
    fn capacity_examples() {
        let t = RangeTable::default_table();
        assert_eq!(t.capacity_bits(&[0u8; 21], 21), 0);
        assert_eq!(t.capacity_bits(&[63u8; 21], 21), 63);
        assert_eq!(t.block_capacity_bits(&[63u8; 41]), 63);
    }

    #[test]
    fn parses_text_form() {
        let src = "# default\n0 15 0\n16 31 1\n\n32 63 3   # worked example\n64 127 4\n128 255 4\n";
        let t: RangeTable = src.parse().unwrap();
        assert_eq!(t, RangeTable::default_table());
        assert_eq!(t.to_string().parse::<RangeTable>().unwrap(), t);

        assert!(matches!("0 255".parse::<RangeTable>(), Err(TableError::Parse { line: 1, .. })));
        assert!(matches!("0 300 0".parse::<RangeTable>(), Err(TableError::Parse { .. })));
        assert!(matches!("0 255 7".parse::<RangeTable>(), Err(TableError::Invalid(_))));
    }

    #[test]
    fn replace_low_bits_masks() {
        assert_eq!(replace_low_bits(0b1001_1011, 0, 1), 0b1001_1010);
        assert_eq!(replace_low_bits(0xFF, 0, 4), 0xF0);
        assert_eq!(replace_low_bits(0x12, 0xFF, 0), 0x12);
    }
}
