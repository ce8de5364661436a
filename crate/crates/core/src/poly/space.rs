//! Variable spaces (blocks of projective variables plus a parameter block),
//! multidegrees, and monomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockKind {
    /// Homogeneous variables of one projective factor.
    Geometric,
    /// Parameters carried into the coefficients of output conditions.
    Parameter,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub name: String,
    pub kind: BlockKind,
    pub vars: Vec<String>,
}

/// An ordered list of variable blocks. Monomial exponent vectors are laid
/// out block by block in declaration order.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableSpace {
    blocks: Vec<Block>,
    var_names: Vec<String>,
    block_of_var: Vec<usize>,
    block_offsets: Vec<usize>,
    geometric: Vec<usize>,
}

pub type Space = Arc<VariableSpace>;

impl VariableSpace {
    pub fn new(blocks: Vec<Block>) -> Result<Space> {
        let mut var_names = Vec::new();
        let mut block_of_var = Vec::new();
        let mut block_offsets = Vec::new();
        let mut geometric = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            block_offsets.push(var_names.len());
            if block.vars.is_empty() {
                return Err(Error::Unsupported(format!("block `{}` has no variables", block.name)));
            }
            if block.kind == BlockKind::Geometric {
                geometric.push(b);
            }
            for v in &block.vars {
                if var_names.contains(v) {
                    return Err(Error::Unsupported(format!("duplicate variable `{v}`")));
                }
                var_names.push(v.clone());
                block_of_var.push(b);
            }
        }
        if geometric.is_empty() {
            return Err(Error::Unsupported("at least one geometric block is required".into()));
        }
        Ok(Arc::new(VariableSpace {
            blocks,
            var_names,
            block_of_var,
            block_offsets,
            geometric,
        }))
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.var_names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn block_of_var(&self, i: usize) -> usize {
        self.block_of_var[i]
    }

    /// Indices of the geometric blocks, in declaration order.
    pub fn geometric_blocks(&self) -> &[usize] {
        &self.geometric
    }

    pub fn num_geometric_blocks(&self) -> usize {
        self.geometric.len()
    }

    /// Projective dimensions l_t of the geometric factors.
    pub fn block_dims(&self) -> Vec<usize> {
        self.geometric.iter().map(|&b| self.blocks[b].vars.len() - 1).collect()
    }

    /// Variable index range of block `b`.
    pub fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        let start = self.block_offsets[b];
        start..start + self.blocks[b].vars.len()
    }

    /// Variable index range of the t-th geometric block.
    pub fn geometric_range(&self, t: usize) -> std::ops::Range<usize> {
        self.block_range(self.geometric[t])
    }

    pub fn is_geometric_var(&self, i: usize) -> bool {
        self.blocks[self.block_of_var[i]].kind == BlockKind::Geometric
    }

    pub fn parameter_vars(&self) -> Vec<usize> {
        (0..self.num_vars()).filter(|&i| !self.is_geometric_var(i)).collect()
    }
}

pub fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Convenience builder used by the CLI and tests.
#[derive(Default)]
pub struct SpaceBuilder {
    blocks: Vec<Block>,
}

impl SpaceBuilder {
    pub fn new() -> Self {
        SpaceBuilder { blocks: Vec::new() }
    }

    pub fn geometric<S: Into<String>>(mut self, name: &str, vars: impl IntoIterator<Item = S>) -> Self {
        self.blocks.push(Block {
            name: name.into(),
            kind: BlockKind::Geometric,
            vars: vars.into_iter().map(Into::into).collect(),
        });
        self
    }

    pub fn parameter<S: Into<String>>(mut self, name: &str, vars: impl IntoIterator<Item = S>) -> Self {
        self.blocks.push(Block {
            name: name.into(),
            kind: BlockKind::Parameter,
            vars: vars.into_iter().map(Into::into).collect(),
        });
        self
    }

    pub fn build(self) -> Result<Space> {
        VariableSpace::new(self.blocks)
    }
}

/// One integer per geometric block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(r: usize) -> Self {
        MultiDegree(vec![0; r])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, t: usize) -> i64 {
        self.0[t]
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        debug_assert_eq!(self.len(), other.len());
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MultiDegree) -> MultiDegree {
        debug_assert_eq!(self.len(), other.len());
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// Lexicographic comparison, used by the twist search.
    pub fn lex_cmp(&self, other: &MultiDegree) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Exponent vector over all variables of a space, compared in
/// graded-lexicographic order (total degree first, then lex with the first
/// declared variable most significant).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn degree_in_range(&self, range: std::ops::Range<usize>) -> i64 {
        self.0[range].iter().map(|&e| e as i64).sum()
    }

    /// Per-geometric-block degrees.
    pub fn geometric_degrees(&self, space: &VariableSpace) -> MultiDegree {
        let degs = (0..space.num_geometric_blocks())
            .map(|t| self.degree_in_range(space.geometric_range(t)))
            .collect();
        MultiDegree(degs)
    }

    /// Copy with all parameter exponents set to zero.
    pub fn geometric_part(&self, space: &VariableSpace) -> Monomial {
        let mut e = self.0.clone();
        for (i, exp) in e.iter_mut().enumerate() {
            if !space.is_geometric_var(i) {
                *exp = 0;
            }
        }
        Monomial(e)
    }

    /// Copy with all geometric exponents set to zero.
    pub fn parameter_part(&self, space: &VariableSpace) -> Monomial {
        let mut e = self.0.clone();
        for (i, exp) in e.iter_mut().enumerate() {
            if space.is_geometric_var(i) {
                *exp = 0;
            }
        }
        Monomial(e)
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1xp1() -> Space {
        SpaceBuilder::new()
            .geometric("st", ["s", "t"])
            .geometric("uv", ["u", "v"])
            .parameter("params", ["l", "m"])
            .build()
            .unwrap()
    }

    #[test]
    fn rejects_duplicates_and_missing_geometric() {
        assert!(SpaceBuilder::new().geometric("a", ["x", "x"]).build().is_err());
        assert!(SpaceBuilder::new().parameter("p", ["l"]).build().is_err());
    }

    #[test]
    fn block_layout() {
        let sp = p1xp1();
        assert_eq!(sp.num_vars(), 6);
        assert_eq!(sp.block_dims(), vec![1, 1]);
        assert_eq!(sp.geometric_range(1), 2..4);
        assert_eq!(sp.var_index("v"), Some(3));
        assert!(!sp.is_geometric_var(4));
    }

    #[test]
    fn grlex_order() {
        // s^2 > s*t > t^2, and degree dominates: s^3 > s*t.
        let s2 = Monomial(vec![2, 0, 0, 0, 0, 0]);
        let st = Monomial(vec![1, 1, 0, 0, 0, 0]);
        let t2 = Monomial(vec![0, 2, 0, 0, 0, 0]);
        let s3 = Monomial(vec![3, 0, 0, 0, 0, 0]);
        assert!(s2 > st && st > t2);
        assert!(s3 > st);
        // Parameters weigh into the grading like any other variable.
        let ls = Monomial(vec![1, 0, 0, 0, 1, 0]);
        assert!(s2 > ls);
    }

    #[test]
    fn monomial_block_split() {
        let sp = p1xp1();
        let mono = Monomial(vec![2, 1, 0, 3, 1, 0]); // s^2 t u^0 v^3 l
        assert_eq!(mono.geometric_degrees(&sp), MultiDegree(vec![3, 3]));
        assert_eq!(mono.geometric_part(&sp), Monomial(vec![2, 1, 0, 3, 0, 0]));
        assert_eq!(mono.parameter_part(&sp), Monomial(vec![0, 0, 0, 0, 1, 0]));
    }
}
