use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use super::quantum::Quantum;
use crate::blocks::{enumerate_colorings, Coloring, ColoredGraph, Slot};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::CycMatrix;

/// The span of the admissible colorings of a graph, with the diagonal
/// Hermitian form of the skein pairing.
#[derive(Clone, Debug)]
pub struct BlockSpace {
    quantum: Arc<Quantum>,
    graph: ColoredGraph,
    basis: Vec<Coloring>,
    index: HashMap<Coloring, usize>,
    weights: Vec<CycNum>,
}

fn rotate_to(corners: [Slot; 3], slot: Slot) -> Option<[Slot; 3]> {
    let k = corners.iter().position(|&s| s == slot)?;
    Some([corners[k], corners[(k + 1) % 3], corners[(k + 2) % 3]])
}

impl BlockSpace {
    pub fn new(quantum: Arc<Quantum>, graph: ColoredGraph) -> Result<Self> {
        let basis = enumerate_colorings(&graph, quantum.level())?;
        let index = basis.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let weights = basis.iter().map(|c| Self::weight_of(&quantum, &graph, c)).collect();
        Ok(BlockSpace { quantum, graph, basis, index, weights })
    }

    /// `prod_v theta(v) / prod_e Delta(e)`; a circle contributes 1.
    fn weight_of(q: &Quantum, graph: &ColoredGraph, coloring: &[u32]) -> CycNum {
        let mut w = CycNum::one();
        for v in 0..graph.vertex_count() {
            let [a, b, c] = graph.vertex_colors(v, coloring);
            w = &w * &q.theta(a, b, c);
        }
        for &c in &coloring[..graph.edges().len()] {
            w = &w * &q.delta_inv(c);
        }
        w
    }

    pub fn quantum(&self) -> &Arc<Quantum> {
        &self.quantum
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn basis(&self) -> &[Coloring] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, coloring: &[u32]) -> Option<usize> {
        self.index.get(coloring).copied()
    }

    /// Diagonal of the Hermitian form.
    pub fn weights(&self) -> &[CycNum] {
        &self.weights
    }

    pub fn hermitian(&self) -> CycMatrix {
        CycMatrix::diagonal(self.weights.clone())
    }

    /// `M† H M = H`.
    pub fn is_h_unitary(&self, m: &CycMatrix) -> bool {
        self.preserves_form(m, self)
    }

    /// `M† H_target M = H_self` for a map from this space to `target`.
    pub fn preserves_form(&self, m: &CycMatrix, target: &BlockSpace) -> bool {
        if m.rows() != target.dim() || m.cols() != self.dim() {
            return false;
        }
        let lhs = &(&m.conj_transpose() * &target.hermitian()) * m;
        lhs == self.hermitian()
    }

    fn check_edge(&self, edge: usize) -> Result<()> {
        if edge >= self.graph.edge_count() {
            return Err(Error::UnknownName(format!("edge {edge}")));
        }
        Ok(())
    }

    /// Dehn twist along the curve dual to `edge`.
    pub fn twist_matrix(&self, edge: usize) -> Result<CycMatrix> {
        self.check_edge(edge)?;
        Ok(CycMatrix::diagonal(self.basis.iter().map(|c| self.quantum.twist(c[edge])).collect()))
    }

    /// Flip of a non-loop edge between `u` and `v`. With corners rotated to
    /// `u = (e, A, B)` and `v = (e, C, D)` the new graph has
    /// `u = (e, D, A)` and `v = (e, B, C)`; the edge keeps its index. Returns
    /// the new space and the change of coordinates from old to new.
    pub fn flip(&self, edge: usize) -> Result<(BlockSpace, CycMatrix)> {
        self.check_edge(edge)?;
        if edge >= self.graph.edges().len() {
            return Err(Error::IllegalMove(format!("edge {edge} is a circle")));
        }
        let (u, v) = self.graph.edges()[edge];
        if u == v {
            return Err(Error::IllegalMove(format!("edge {edge} is a loop")));
        }
        let e = Slot::Edge(edge);
        let [_, a, b] = rotate_to(self.graph.corners(u), e).expect("edge at its endpoint");
        let [_, c, d] = rotate_to(self.graph.corners(v), e).expect("edge at its endpoint");
        let mut corners: Vec<[Slot; 3]> = (0..self.graph.vertex_count()).map(|w| self.graph.corners(w)).collect();
        corners[u] = [e, d, a];
        corners[v] = [e, b, c];
        let legs = self.graph.legs().iter().map(|&(_, c)| c).collect();
        let graph = ColoredGraph::from_corners(corners, self.graph.edges().len(), legs)?;
        let target = BlockSpace::new(self.quantum.clone(), graph)?;
        let q = &self.quantum;
        let mut m = CycMatrix::zeros(target.dim(), self.dim());
        for (j, old) in self.basis.iter().enumerate() {
            let col = |s: Slot| self.graph.slot_color(s, old);
            let (ca, cb, cc, cd, f) = (col(a), col(b), col(c), col(d), old[edge]);
            let mut new = old.clone();
            for big_e in (0..q.p()).step_by(2).take_while(|&x| x + 3 <= q.p()) {
                new[edge] = big_e;
                if let Some(i) = target.index_of(&new) {
                    m.set(i, j, q.sixj(ca, cb, big_e, cc, cd, f));
                }
            }
        }
        Ok((target, m))
    }

    /// Modular transformation on the one-holed torus cut out by the loop
    /// `edge`: block diagonal over the colors of every other edge.
    pub fn s_move(&self, edge: usize) -> Result<CycMatrix> {
        self.check_edge(edge)?;
        let (u, v) = *self
            .graph
            .edges()
            .get(edge)
            .ok_or_else(|| Error::IllegalMove(format!("edge {edge} is a circle")))?;
        if u != v {
            return Err(Error::IllegalMove(format!("edge {edge} is not a loop")));
        }
        let third = *self
            .graph
            .corners(u)
            .iter()
            .find(|&&s| s != Slot::Edge(edge))
            .expect("loop vertex has a third corner");
        let mut groups: Vec<(Coloring, Vec<usize>)> = Vec::new();
        for (i, c) in self.basis.iter().enumerate() {
            let mut key = c.clone();
            key[edge] = 0;
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => members.push(i),
                None => groups.push((key, vec![i])),
            }
        }
        let mut m = CycMatrix::zeros(self.dim(), self.dim());
        let mut cache: HashMap<(u32, Vec<u32>), CycMatrix> = HashMap::new();
        for (_, members) in groups {
            let i = self.graph.slot_color(third, &self.basis[members[0]]);
            let colors: Vec<u32> = members.iter().map(|&k| self.basis[k][edge]).collect();
            let s = cache.entry((i, colors.clone())).or_insert_with(|| self.quantum.s_matrix(i, &colors));
            for (r, &kr) in members.iter().enumerate() {
                for (c, &kc) in members.iter().enumerate() {
                    m.set(kr, kc, s.get(r, c).clone());
                }
            }
        }
        Ok(m)
    }

    /// Half-twist exchanging the two corners of `vertex` other than
    /// `fixed`: diagonal with entries `lambda^{ab}_c`, `c` the color at
    /// `fixed`.
    pub fn half_twist(&self, vertex: usize, fixed: usize) -> Result<CycMatrix> {
        if vertex >= self.graph.vertex_count() || fixed > 2 {
            return Err(Error::IllegalMove(format!("corner {fixed} of vertex {vertex}")));
        }
        let diag = self
            .basis
            .iter()
            .map(|col| {
                let cs = self.graph.vertex_colors(vertex, col);
                self.quantum.half_twist(cs[(fixed + 1) % 3], cs[(fixed + 2) % 3], cs[fixed])
            })
            .collect();
        Ok(CycMatrix::diagonal(diag))
    }

    /// The same graph over a different root.
    pub fn with_quantum(&self, quantum: Arc<Quantum>) -> Result<BlockSpace> {
        BlockSpace::new(quantum, self.graph.clone())
    }

    /// Conjugate of a diagonal matrix by a change of coordinates `m`:
    /// `m^-1 diag m`.
    pub fn pull_back(m: &CycMatrix, diag: &CycMatrix) -> CycMatrix {
        let inv = m.inverse().expect("change of coordinates is invertible");
        &(&inv * diag) * m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{make_root, Level, RootChoice};

    fn quantum(p: u64) -> Arc<Quantum> {
        Arc::new(Quantum::new(make_root(Level::new(p).unwrap(), RootChoice::Unitary).unwrap()))
    }

    fn sphere5(q: Arc<Quantum>, c: [u32; 5]) -> BlockSpace {
        let corners = vec![
            [Slot::Edge(0), Slot::Leg(0), Slot::Leg(1)],
            [Slot::Edge(0), Slot::Leg(2), Slot::Edge(1)],
            [Slot::Edge(1), Slot::Leg(3), Slot::Leg(4)],
        ];
        BlockSpace::new(q, ColoredGraph::from_corners(corners, 2, c.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn flips_preserve_the_form_and_square_to_identity() {
        let s = sphere5(quantum(7), [2, 2, 2, 2, 4]);
        for e in 0..2 {
            let (t, m) = s.flip(e).unwrap();
            assert!(s.preserves_form(&m, &t));
            let (_, back) = t.flip(e).unwrap();
            assert!((&back * &m).is_identity());
        }
    }

    #[test]
    fn pentagon() {
        let s = sphere5(quantum(7), [2, 2, 2, 2, 2]);
        let mut cur = s.clone();
        let mut total = CycMatrix::identity(s.dim());
        for k in 0..5 {
            let (next, m) = cur.flip(k % 2).unwrap();
            total = &m * &total;
            cur = next;
        }
        // five flips return the caterpillar with its two edges exchanged
        let swap = CycMatrix::from_fn(s.dim(), s.dim(), |r, c| {
            let (a, b) = (&cur.basis()[r], &s.basis()[c]);
            CycNum::from_integer((a[0] == b[1] && a[1] == b[0]) as i64)
        });
        assert_eq!(total, swap);
    }

    #[test]
    fn loops_cannot_flip() {
        let g = ColoredGraph::from_corners(vec![[Slot::Edge(0), Slot::Edge(0), Slot::Leg(0)]], 1, vec![2]).unwrap();
        let s = BlockSpace::new(quantum(5), g).unwrap();
        assert!(matches!(s.flip(0), Err(Error::IllegalMove(_))));
        assert!(matches!(s.twist_matrix(3), Err(Error::UnknownName(_))));
        assert!(s.is_h_unitary(&s.s_move(0).unwrap()));
    }
}
