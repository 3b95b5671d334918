//! Ground truth for the simulator: proper k-colorings by plain backtracking.
//!
//! Nothing here touches tubes or strands. Adjacency is rebuilt from the edge
//! list as earlier-neighbor index lists.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::codec::Color;
use crate::graph::Graph;

/// Largest vertex count the oracle will enumerate.
pub const MAX_VERTICES: u32 = 24;

/// One color per vertex; index 0 is vertex 1.
pub type Coloring = Vec<Color>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("graph has {0} vertices; the oracle stops at {MAX_VERTICES}")]
    TooLarge(u32),
    #[error("need at least one color")]
    NoColors,
}

/// No edge joins two vertices of the same color.
pub fn is_proper(g: &Graph, coloring: &[Color]) -> Result<bool, OracleError> {
    let n = g.vertex_count() as usize;
    if coloring.len() != n {
        return Err(OracleError::LengthMismatch {
            expected: n,
            got: coloring.len(),
        });
    }
    Ok(g.edges()
        .all(|(u, v)| coloring[u as usize - 1] != coloring[v as usize - 1]))
}

struct Search {
    earlier: Vec<Vec<usize>>,
    k: Color,
    current: Vec<Color>,
}

impl Search {
    fn new(g: &Graph, k: Color) -> Result<Self, OracleError> {
        if k == 0 {
            return Err(OracleError::NoColors);
        }
        if g.vertex_count() > MAX_VERTICES {
            return Err(OracleError::TooLarge(g.vertex_count()));
        }
        let n = g.vertex_count() as usize;
        let mut earlier = vec![Vec::new(); n];
        for (u, v) in g.edges() {
            // u < v, so u is the earlier endpoint.
            earlier[v as usize - 1].push(u as usize - 1);
        }
        Ok(Search {
            earlier,
            k,
            current: Vec::with_capacity(n),
        })
    }

    /// Visits every proper coloring in lexicographic order.
    fn run(&mut self, visit: &mut dyn FnMut(&[Color])) {
        let depth = self.current.len();
        if depth == self.earlier.len() {
            visit(&self.current);
            return;
        }
        for color in 0..self.k {
            if self.earlier[depth]
                .iter()
                .any(|&j| self.current[j] == color)
            {
                continue;
            }
            self.current.push(color);
            self.run(visit);
            self.current.pop();
        }
    }
}

/// Every proper `k`-coloring of `g`, lexicographically ordered.
pub fn enumerate_colorings(g: &Graph, k: Color) -> Result<Vec<Coloring>, OracleError> {
    let mut search = Search::new(g, k)?;
    let mut out = Vec::new();
    search.run(&mut |c| out.push(c.to_vec()));
    Ok(out)
}

/// Number of proper `k`-colorings of `g`.
pub fn count_colorings(g: &Graph, k: Color) -> Result<u64, OracleError> {
    let mut search = Search::new(g, k)?;
    let mut count = 0u64;
    search.run(&mut |_| count += 1);
    Ok(count)
}
