//! Blocking schemes: the `(width, cost)` parameters of the chained lookup
//! tables a decoder walks, and the per-level cost profile derived from them.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact access-cost arithmetic. Costs never touch floating point.
pub type Cost = Ratio<i128>;

/// One lookup table level: `width` bits consumed per lookup, `cost`
/// charged per access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub width: u32,
    pub cost: Cost,
}

/// A sequence of block parameters, optionally extended by repeating the
/// last block indefinitely (the trailing `,...` of the text form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingScheme {
    blocks: Vec<Block>,
    extend: bool,
}

impl BlockingScheme {
    pub fn new(blocks: Vec<Block>, extend: bool) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidParameter("blocking scheme needs at least one block"));
        }
        if blocks.iter().any(|b| b.width == 0) {
            return Err(Error::InvalidParameter("block width must be at least 1"));
        }
        if blocks.iter().any(|b| !b.cost.is_positive()) {
            return Err(Error::InvalidParameter("block cost must be positive"));
        }
        Ok(BlockingScheme { blocks, extend })
    }

    /// Shorthand for integer-cost schemes in tests and small tools.
    pub fn from_ints(blocks: &[(u32, i128)], extend: bool) -> Result<Self> {
        Self::new(
            blocks
                .iter()
                .map(|&(w, q)| Block { width: w, cost: Cost::from_integer(q) })
                .collect(),
            extend,
        )
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn extends(&self) -> bool {
        self.extend
    }

    /// Total addressable depth, or `None` when the scheme extends forever.
    pub fn addressable_width(&self) -> Option<u64> {
        if self.extend {
            None
        } else {
            Some(self.blocks.iter().map(|b| b.width as u64).sum())
        }
    }

    /// Width and cost of block level `index` (1-based), honouring the
    /// repeat-last extension rule.
    pub fn block_at(&self, index: u32) -> Result<&Block> {
        debug_assert!(index >= 1);
        let i = index as usize - 1;
        if i < self.blocks.len() {
            Ok(&self.blocks[i])
        } else if self.extend {
            Ok(self.blocks.last().expect("non-empty"))
        } else {
            Err(Error::SchemeTooShort)
        }
    }

    /// Number of memory hierarchies `k`: one plus the number of adjacent
    /// access-cost changes across the declared blocks.
    pub fn hierarchy_count(&self) -> u32 {
        let changes = self
            .blocks
            .windows(2)
            .filter(|w| w[0].cost != w[1].cost)
            .count();
        1 + changes as u32
    }

    /// The block level holding depth `d`, and the cumulative access cost
    /// paid to reach it: the index is the first block whose cumulative
    /// width covers `d`.
    pub fn block_of_depth(&self, d: u32) -> Result<(u32, Cost)> {
        if d == 0 {
            return Err(Error::InvalidParameter("depth must be at least 1"));
        }
        let mut covered = 0u64;
        let mut cum = Cost::zero();
        let mut index = 0u32;
        loop {
            index += 1;
            let block = self.block_at(index)?;
            covered += block.width as u64;
            cum += block.cost;
            if covered >= d as u64 {
                return Ok((index, cum));
            }
        }
    }

    /// Per-level cost vector for a tree of height `h`: the block's cost at
    /// its top level, zero elsewhere.
    pub fn level_cost_profile(&self, h: u32) -> Result<LevelCostProfile> {
        if h == 0 {
            return Ok(LevelCostProfile { qhat: Vec::new() });
        }
        let mut qhat = vec![Cost::zero(); h as usize];
        let mut top = 1u64; // first level of the next block
        let mut index = 0u32;
        while top <= h as u64 {
            index += 1;
            let block = self.block_at(index)?;
            qhat[top as usize - 1] = block.cost;
            top += block.width as u64;
        }
        // A finite scheme must still cover all h levels.
        if !self.extend {
            let width = self.addressable_width().expect("finite");
            if (h as u64) > width {
                return Err(Error::SchemeTooShort);
            }
        }
        Ok(LevelCostProfile { qhat })
    }
}

impl fmt::Display for BlockingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", b.width, format_cost(&b.cost))?;
        }
        if self.extend {
            write!(f, ",...")?;
        }
        Ok(())
    }
}

/// Costs `q̂_1..q̂_h` indexed by tree level, nonzero exactly at the top
/// level of each block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCostProfile {
    qhat: Vec<Cost>,
}

impl LevelCostProfile {
    /// Cost charged at `level` (1-based).
    pub fn qhat(&self, level: u32) -> Cost {
        self.qhat[level as usize - 1]
    }

    pub fn levels(&self) -> u32 {
        self.qhat.len() as u32
    }

    pub fn as_slice(&self) -> &[Cost] {
        &self.qhat
    }

    /// Integer rescaling for the dynamic programs: weights `q̂·denom`
    /// with a common denominator, so table cells stay in integers.
    pub(crate) fn scaled(&self) -> (Vec<i128>, i128) {
        let denom = self
            .qhat
            .iter()
            .fold(1i128, |acc, q| acc.lcm(q.denom()));
        let weights = self
            .qhat
            .iter()
            .map(|q| q.numer() * (denom / q.denom()))
            .collect();
        (weights, denom)
    }
}

impl FromStr for BlockingScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scheme(s)
    }
}

/// Parses the text grammar: `(w,q)` pairs, comma-separated, with an
/// optional trailing `,...` that sets the repeat-last extension. Widths
/// are decimal integers, costs decimal rationals.
pub fn parse_scheme(text: &str) -> Result<BlockingScheme> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let mut blocks = Vec::new();
    let mut extend = false;
    p.skip_ws();
    loop {
        if blocks.is_empty() || !p.eat(b',') {
            if blocks.is_empty() {
                // fall through to the '(' check for a precise error
            } else {
                break;
            }
        }
        p.skip_ws();
        if !blocks.is_empty() && p.peek() == Some(b'.') {
            p.expect_literal("...")?;
            extend = true;
            break;
        }
        if !p.eat(b'(') {
            return Err(p.error("expected '('"));
        }
        p.skip_ws();
        let width = p.parse_u32()?;
        if width == 0 {
            return Err(p.error("block width must be at least 1"));
        }
        p.skip_ws();
        if !p.eat(b',') {
            return Err(p.error("expected ',' between width and cost"));
        }
        p.skip_ws();
        let cost = p.parse_cost()?;
        if !cost.is_positive() {
            return Err(p.error("block cost must be positive"));
        }
        p.skip_ws();
        if !p.eat(b')') {
            return Err(p.error("expected ')'"));
        }
        blocks.push(Block { width, cost });
        p.skip_ws();
        if p.at_end() {
            break;
        }
    }
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing characters after scheme"));
    }
    BlockingScheme::new(blocks, extend)
}

/// Parses a decimal rational such as `20` or `0.5`.
pub fn parse_cost(text: &str) -> Result<Cost> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let c = p.parse_cost()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing characters after number"));
    }
    Ok(c)
}

/// Renders a cost exactly: integers plainly, otherwise `numer/denom`.
pub fn format_cost(c: &Cost) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expect_literal(&mut self, lit: &str) -> Result<()> {
        if self.bytes[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.error("expected '...'"))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::SchemeParse { pos: self.pos, msg: msg.to_string() }
    }

    fn parse_digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a digit"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits"))
    }

    fn parse_u32(&mut self) -> Result<u32> {
        let start = self.pos;
        let digits = self.parse_digits()?;
        digits
            .parse::<u32>()
            .map_err(|_| Error::SchemeParse { pos: start, msg: "number too large".into() })
    }

    fn parse_cost(&mut self) -> Result<Cost> {
        let start = self.pos;
        let int = self.parse_digits()?;
        let int: i128 = int
            .parse()
            .map_err(|_| Error::SchemeParse { pos: start, msg: "number too large".into() })?;
        if !self.eat(b'.') {
            return Ok(Cost::from_integer(int));
        }
        let frac_start = self.pos;
        let frac = self.parse_digits()?;
        if frac.len() > 18 {
            return Err(Error::SchemeParse {
                pos: frac_start,
                msg: "too many decimal places".into(),
            });
        }
        let scale = 10i128.pow(frac.len() as u32);
        let frac: i128 = frac.parse().expect("bounded digits");
        Ok(Cost::new(int * scale + frac, scale))
    }
}
