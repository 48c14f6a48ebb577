use super::{adm, check_color};
use crate::cyclo::Level;
use crate::error::{Error, Result};

/// Colors of the internal edges, in the graph's edge order.
pub type Coloring = Vec<u32>;

/// What sits at one of the three corners of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Edge(usize),
    Leg(usize),
}

/// A uni-trivalent graph: internal edges between trivalent vertices (loops
/// allowed), boundary legs carrying fixed colors, and vertexless circles.
///
/// Edges are numbered `0..edges.len()` followed by the circles; colorings
/// list colors in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    legs: Vec<(usize, u32)>,
    circles: usize,
    corners: Vec<[Slot; 3]>,
}

impl ColoredGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, legs: Vec<(usize, u32)>, circles: usize) -> Result<Self> {
        let mut corners: Vec<Vec<Slot>> = vec![Vec::new(); vertices];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::MalformedGraph(format!("edge {i} references a missing vertex")));
            }
            corners[u].push(Slot::Edge(i));
            corners[v].push(Slot::Edge(i));
        }
        for (i, &(v, _)) in legs.iter().enumerate() {
            if v >= vertices {
                return Err(Error::MalformedGraph(format!("leg {i} references a missing vertex")));
            }
            corners[v].push(Slot::Leg(i));
        }
        let mut fixed = Vec::with_capacity(vertices);
        for (v, c) in corners.into_iter().enumerate() {
            let arr: [Slot; 3] = c
                .try_into()
                .map_err(|c: Vec<Slot>| Error::MalformedGraph(format!("vertex {v} has degree {}", c.len())))?;
            fixed.push(arr);
        }
        Ok(ColoredGraph { vertices, edges, legs, circles, corners: fixed })
    }

    /// A graph given by the cyclic order of slots around each vertex. Every
    /// edge index below `edge_count` must occur exactly twice and every leg
    /// exactly once; edge endpoints are read off the corners.
    pub fn from_corners(corners: Vec<[Slot; 3]>, edge_count: usize, legs: Vec<u32>) -> Result<Self> {
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); edge_count];
        let mut leg_at: Vec<Option<usize>> = vec![None; legs.len()];
        for (v, cs) in corners.iter().enumerate() {
            for s in cs {
                match *s {
                    Slot::Edge(e) if e < edge_count => ends[e].push(v),
                    Slot::Leg(l) if l < legs.len() && leg_at[l].is_none() => leg_at[l] = Some(v),
                    s => return Err(Error::MalformedGraph(format!("bad slot {s:?} at vertex {v}"))),
                }
            }
        }
        let mut edges = Vec::with_capacity(edge_count);
        for (e, vs) in ends.iter().enumerate() {
            match vs[..] {
                [u, v] => edges.push((u, v)),
                _ => return Err(Error::MalformedGraph(format!("edge {e} has {} ends", vs.len()))),
            }
        }
        let legs = legs
            .iter()
            .zip(&leg_at)
            .enumerate()
            .map(|(l, (&c, v))| v.map(|v| (v, c)).ok_or_else(|| Error::MalformedGraph(format!("leg {l} is unattached"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ColoredGraph { vertices: corners.len(), edges, legs, circles: 0, corners })
    }

    /// The standard graph for a genus `g` surface with boundary colors
    /// `labels`: handles first, then legs, hung off a caterpillar spine.
    /// Each handle is a connector edge followed by its loop edge; spine edges
    /// are interleaved so every vertex closes as early as possible.
    pub fn surface(g: usize, labels: &[u32]) -> Result<Self> {
        #[derive(Clone, Copy)]
        enum Att {
            Handle,
            Leg(u32),
        }
        let atts: Vec<Att> = std::iter::repeat(Att::Handle).take(g).chain(labels.iter().map(|&c| Att::Leg(c))).collect();
        let n = atts.len();
        match n {
            0 => return Err(Error::MalformedGraph("empty surface".into())),
            1 => {
                return match atts[0] {
                    Att::Handle => ColoredGraph::new(0, vec![], vec![], 1),
                    Att::Leg(_) => Err(Error::MalformedGraph("a sphere with one leg has no trivalent graph".into())),
                }
            }
            2 => {
                return match (atts[0], atts[1]) {
                    (Att::Handle, Att::Handle) => ColoredGraph::new(2, vec![(0, 0), (0, 1), (1, 1)], vec![], 0),
                    (Att::Handle, Att::Leg(c)) => ColoredGraph::new(1, vec![(0, 0)], vec![(0, c)], 0),
                    _ => Err(Error::MalformedGraph("a sphere with two legs has no trivalent graph".into())),
                }
            }
            _ => {}
        }
        let spine = n - 2;
        let host = |m: usize| match m {
            0 | 1 => 0,
            m if m >= n - 2 => spine - 1,
            m => m - 1,
        };
        let mut vertices = spine;
        let mut edges = Vec::new();
        let mut legs = Vec::new();
        for (m, att) in atts.iter().enumerate() {
            let s = host(m);
            match *att {
                Att::Handle => {
                    let h = vertices;
                    vertices += 1;
                    edges.push((s, h));
                    edges.push((h, h));
                }
                Att::Leg(c) => legs.push((s, c)),
            }
            if m >= 1 && m + 3 <= n {
                edges.push((m - 1, m));
            }
        }
        ColoredGraph::new(vertices, edges, legs, 0)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn legs(&self) -> &[(usize, u32)] {
        &self.legs
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn corners(&self, v: usize) -> [Slot; 3] {
        self.corners[v]
    }

    /// Number of colored edges, circles included.
    pub fn edge_count(&self) -> usize {
        self.edges.len() + self.circles
    }

    /// First Betti number.
    pub fn genus(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        let mut components = self.vertices;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        self.edges.len() + components - self.vertices + self.circles
    }

    pub fn boundary_count(&self) -> usize {
        self.legs.len()
    }

    pub fn with_leg_colors(&self, colors: &[u32]) -> Result<Self> {
        if colors.len() != self.legs.len() {
            return Err(Error::Dimension(format!("{} leg colors for {} legs", colors.len(), self.legs.len())));
        }
        let mut g = self.clone();
        for (leg, &c) in g.legs.iter_mut().zip(colors) {
            leg.1 = c;
        }
        Ok(g)
    }

    pub fn slot_color(&self, slot: Slot, coloring: &[u32]) -> u32 {
        match slot {
            Slot::Edge(e) => coloring[e],
            Slot::Leg(l) => self.legs[l].1,
        }
    }

    /// Colors around vertex `v` in corner order.
    pub fn vertex_colors(&self, v: usize, coloring: &[u32]) -> [u32; 3] {
        self.corners[v].map(|s| self.slot_color(s, coloring))
    }

    pub fn is_admissible(&self, coloring: &[u32], level: Level) -> bool {
        let p = level.p();
        coloring.len() == self.edge_count()
            && coloring.iter().all(|&c| c % 2 == 0 && c + 3 <= p)
            && (0..self.vertices).all(|v| {
                let [a, b, c] = self.vertex_colors(v, coloring);
                adm(a, b, c, p)
            })
    }

    /// For each edge index, the vertices whose last incident edge it is, and
    /// the vertices with legs only.
    fn closing_schedule(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut at = vec![Vec::new(); self.edge_count()];
        let mut initial = Vec::new();
        for v in 0..self.vertices {
            let last = self.corners[v]
                .iter()
                .filter_map(|s| match s {
                    Slot::Edge(e) => Some(*e),
                    Slot::Leg(_) => None,
                })
                .max();
            match last {
                Some(e) => at[e].push(v),
                None => initial.push(v),
            }
        }
        (at, initial)
    }
}

struct Search<'a> {
    graph: &'a ColoredGraph,
    p: u32,
    schedule: Vec<Vec<usize>>,
    coloring: Vec<u32>,
}

impl Search<'_> {
    fn run(&mut self, k: usize, visit: &mut dyn FnMut(&[u32])) {
        if k == self.coloring.len() {
            visit(&self.coloring);
            return;
        }
        let mut c = 0;
        while c + 3 <= self.p {
            self.coloring[k] = c;
            let ok = self.schedule[k].iter().all(|&v| {
                let [a, b, d] = self.graph.vertex_colors(v, &self.coloring);
                adm(a, b, d, self.p)
            });
            if ok {
                self.run(k + 1, visit);
            }
            c += 2;
        }
    }
}

fn search(graph: &ColoredGraph, level: Level, visit: &mut dyn FnMut(&[u32])) -> Result<()> {
    let p = level.p();
    for &(_, c) in &graph.legs {
        check_color(c, p)?;
    }
    let (schedule, initial) = graph.closing_schedule();
    for v in initial {
        let [a, b, c] = graph.vertex_colors(v, &[]);
        if !adm(a, b, c, p) {
            return Ok(());
        }
    }
    let mut s = Search { graph, p, schedule, coloring: vec![0; graph.edge_count()] };
    s.run(0, visit);
    Ok(())
}

/// All admissible colorings in lexicographic order of the edge numbering.
pub fn enumerate_colorings(graph: &ColoredGraph, level: Level) -> Result<Vec<Coloring>> {
    let mut out = Vec::new();
    search(graph, level, &mut |c| out.push(c.to_vec()))?;
    Ok(out)
}

/// Number of admissible colorings, without materializing them.
pub fn count_colorings(graph: &ColoredGraph, level: Level) -> Result<u64> {
    let mut n = 0u64;
    search(graph, level, &mut |_| n += 1)?;
    Ok(n)
}
