//! Biconnected components (Hopcroft–Tarjan with an edge stack).

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub vertices: VertexSet,
    #[serde(rename = "bridge")]
    pub is_bridge: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: VertexSet,
}

struct State<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    out: BlockDecomposition,
}

const UNSEEN: usize = usize::MAX;

impl State<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        let mut children = 0;
        for v in self.g.neighbors(u) {
            if self.disc[v] == UNSEEN {
                children += 1;
                self.stack.push((u, v));
                self.visit(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    if parent.is_some() || children > 1 {
                        self.out.cut_vertices.insert(u);
                    }
                    let mut vertices = VertexSet::EMPTY;
                    let mut edges = 0;
                    while let Some((a, b)) = self.stack.pop() {
                        vertices.insert(a);
                        vertices.insert(b);
                        edges += 1;
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    self.out.blocks.push(Block { vertices, is_bridge: edges == 1 });
                }
            } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                self.stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }
}

/// Blocks of `g` in completion order of a smallest-id DFS. Isolated vertices
/// form singleton, non-bridge blocks so that every non-cut vertex lies in
/// exactly one block.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.order();
    let mut st = State {
        g,
        disc: vec![UNSEEN; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: BlockDecomposition { blocks: Vec::new(), cut_vertices: VertexSet::EMPTY },
    };
    for v in 0..n {
        if st.disc[v] == UNSEEN {
            if g.degree(v) == 0 {
                st.disc[v] = st.time;
                st.time += 1;
                st.out.blocks.push(Block { vertices: VertexSet::singleton(v), is_bridge: false });
            } else {
                st.visit(v, None);
            }
        }
    }
    st.out
}
