//! Group-list encoding of `{0,1}` matrices.
//!
//! Row `i` of a matrix splits every group of row `i-1` into a group of ones
//! followed by a group of zeros. A group with label `l` has children `2l`
//! (ones) and `2l + 1` (zeros), so the label of a group at depth `i` spells
//! the history of its columns in rows `1..=i`: bit `i - j` (counted from the
//! least significant bit) is 0 exactly when the column has a 1 in row `j`.
//! Empty groups are not stored.
//!
//! Row 1 refines a virtual root row of depth 0 holding the single group
//! `(0, m)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::BitMatrix;

/// Largest depth whose labels fit in a `u64` together with their children.
pub const MAX_DEPTH: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group {
    pub label: u64,
    pub count: usize,
}

impl Group {
    pub fn new(label: u64, count: usize) -> Self {
        Self { label, count }
    }

    /// Even labels hold ones, odd labels hold zeros.
    pub fn bit(&self) -> u8 {
        u8::from(self.label % 2 == 0)
    }
}

impl From<(u64, usize)> for Group {
    fn from((label, count): (u64, usize)) -> Self {
        Self { label, count }
    }
}

/// One matrix row as an ordered list of non-empty groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupList {
    depth: usize,
    groups: Vec<Group>,
}

impl GroupList {
    /// Validates labels (strictly increasing, below `2^depth`) and counts
    /// (positive).
    pub fn new(depth: usize, groups: Vec<Group>) -> Result<Self> {
        if depth > MAX_DEPTH {
            return Err(Error::InvalidGroupList(format!(
                "depth {depth} exceeds the maximum {MAX_DEPTH}"
            )));
        }
        if groups.is_empty() {
            return Err(Error::InvalidGroupList("no groups".into()));
        }
        let bound = 1u64 << depth;
        for (s, g) in groups.iter().enumerate() {
            if g.count == 0 {
                return Err(Error::InvalidGroupList(format!(
                    "group {} with label {} is empty",
                    s + 1,
                    g.label
                )));
            }
            if g.label >= bound {
                return Err(Error::InvalidGroupList(format!(
                    "label {} does not fit depth {depth}",
                    g.label
                )));
            }
            if s > 0 && groups[s - 1].label >= g.label {
                return Err(Error::InvalidGroupList(format!(
                    "labels not increasing at group {}",
                    s + 1
                )));
            }
        }
        Ok(Self { depth, groups })
    }

    pub(crate) fn from_parts(depth: usize, groups: Vec<Group>) -> Self {
        debug_assert!(Self::new(depth, groups.clone()).is_ok());
        Self { depth, groups }
    }

    /// The depth-0 row with a single group covering all `m` columns.
    pub fn root(m: usize) -> Self {
        Self {
            depth: 0,
            groups: vec![Group::new(0, m)],
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Number of columns covered, i.e. the sum of the counts.
    pub fn width(&self) -> usize {
        self.groups.iter().map(|g| g.count).sum()
    }

    /// Checks that `self` is a one-step refinement of `parent`: every label
    /// descends from a parent label and each parent's children add up to its
    /// count.
    pub fn check_refines(&self, parent: &GroupList) -> Result<()> {
        if self.depth != parent.depth + 1 {
            return Err(Error::InvalidGroupList(format!(
                "depth {} cannot refine depth {}",
                self.depth, parent.depth
            )));
        }
        let mut children = self.groups.iter().peekable();
        for p in &parent.groups {
            let mut covered = 0;
            while let Some(c) = children.next_if(|c| c.label >> 1 == p.label) {
                covered += c.count;
            }
            if covered != p.count {
                return Err(Error::InvalidGroupList(format!(
                    "children of group {} at depth {} hold {covered} columns, expected {}",
                    p.label, parent.depth, p.count
                )));
            }
        }
        if let Some(c) = children.next() {
            return Err(Error::InvalidGroupList(format!(
                "label {} at depth {} has no parent group",
                c.label, self.depth
            )));
        }
        Ok(())
    }
}

/// Bracketed listing without spaces, e.g. `[[0,8],[1,7]]`.
impl fmt::Display for GroupList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (s, g) in self.groups.iter().enumerate() {
            if s > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{},{}]", g.label, g.count)?;
        }
        f.write_str("]")
    }
}

/// An `m`-row matrix in group-list form; row `i` (1-based) has depth `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionMatrix {
    m: usize,
    rows: Vec<GroupList>,
}

impl PartitionMatrix {
    /// Validates depths and refinement consistency of every row against the
    /// row above it (row 1 against the root).
    pub fn new(rows: Vec<GroupList>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidGroupList("matrix has no rows".into()));
        };
        let m = first.width();
        if rows.len() != m {
            return Err(Error::InvalidGroupList(format!(
                "{} rows for {m} columns",
                rows.len()
            )));
        }
        let mut parent = GroupList::root(m);
        for (i, row) in rows.iter().enumerate() {
            row.check_refines(&parent).map_err(|e| match e {
                Error::InvalidGroupList(msg) => {
                    Error::InvalidGroupList(format!("row {}: {msg}", i + 1))
                }
                other => other,
            })?;
            parent = row.clone();
        }
        Ok(Self { m, rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<GroupList>) -> Self {
        let m = rows.len();
        Self { m, rows }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[GroupList] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<GroupList> {
        self.rows
    }
}

/// Bracketed listing of all rows without spaces, e.g. `[[[0,2],[1,1]],...]`.
impl fmt::Display for PartitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}

pub fn decode_row(g: &GroupList) -> Vec<u8> {
    let mut bits = Vec::with_capacity(g.width());
    for group in &g.groups {
        bits.extend(std::iter::repeat(group.bit()).take(group.count));
    }
    bits
}

/// Encodes `bits` as a refinement of `parent`.
///
/// Inside the span of each parent group the ones must precede the zeros;
/// otherwise the counts alone could not reproduce the row.
pub fn encode_row(bits: &[u8], parent: &GroupList) -> Result<GroupList> {
    let row = parent.depth + 1;
    if bits.len() != parent.width() {
        return Err(Error::LengthMismatch {
            left: bits.len(),
            right: parent.width(),
        });
    }
    if row > MAX_DEPTH {
        return Err(Error::DepthOverflow {
            m: bits.len(),
            max: MAX_DEPTH,
        });
    }
    let mut groups = Vec::with_capacity(2 * parent.len());
    let mut start = 0;
    for p in &parent.groups {
        let span = &bits[start..start + p.count];
        let ones = span.iter().take_while(|&&b| b == 1).count();
        if span[ones..].iter().any(|&b| b != 0) {
            return Err(Error::NonCanonicalRow { row });
        }
        if ones > 0 {
            groups.push(Group::new(2 * p.label, ones));
        }
        if p.count > ones {
            groups.push(Group::new(2 * p.label + 1, p.count - ones));
        }
        start += p.count;
    }
    Ok(GroupList::from_parts(row, groups))
}

pub fn encode_matrix(t: &BitMatrix) -> Result<PartitionMatrix> {
    let m = t.size();
    if m > MAX_DEPTH {
        return Err(Error::DepthOverflow { m, max: MAX_DEPTH });
    }
    let mut rows: Vec<GroupList> = Vec::with_capacity(m);
    let mut parent = GroupList::root(m);
    for i in 0..m {
        let row = encode_row(&t.row(i), &parent)?;
        parent = row.clone();
        rows.push(row);
    }
    Ok(PartitionMatrix { m, rows })
}

pub fn decode_matrix(p: &PartitionMatrix) -> BitMatrix {
    let rows: Vec<Vec<u8>> = p.rows.iter().map(decode_row).collect();
    BitMatrix::from_rows(&rows).expect("validated partition matrices decode to square matrices")
}

/// Reorders columns into the canonical layout: a stable sort on each
/// column's history read from the top row down, with 1 before 0.
///
/// Every row of the result is ones-first within the spans of the rows above
/// it, so [`encode_matrix`] accepts it.
pub fn canonicalize(t: &BitMatrix) -> BitMatrix {
    let columns: Vec<Vec<u8>> = (0..t.size()).map(|j| t.column(j)).collect();
    let mut order: Vec<usize> = (0..t.size()).collect();
    order.sort_by(|&x, &y| columns[y].cmp(&columns[x]));
    t.permute_columns(&order)
}
