//! Weighted union-find with path halving, tracking component sizes and
//! per-component boundary incidence counts.

/// Disjoint-set forest over `0..n`. Each component tracks its vertex count
/// and how many of its vertices are marked (used for outer-layer incidence).
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    marked: Vec<u32>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            marked: vec![0; n],
            components: n,
        }
    }

    /// As [`Self::new`], with the given vertices initially marked.
    pub fn with_marks(n: usize, marks: impl IntoIterator<Item = u32>) -> UnionFind {
        let mut uf = UnionFind::new(n);
        for v in marks {
            uf.marked[v as usize] = 1;
        }
        uf
    }

    pub fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let grand = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = grand;
            v = grand;
        }
        v
    }

    /// Union by size; returns true if the two were previously separate.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.marked[ra as usize] += self.marked[rb as usize];
        self.components -= 1;
        true
    }

    pub fn connected(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }

    /// Size of the component containing `v`.
    pub fn component_size(&mut self, v: u32) -> u32 {
        let r = self.find(v);
        self.size[r as usize]
    }

    /// Number of marked vertices in the component containing `v`.
    pub fn component_marked(&mut self, v: u32) -> u32 {
        let r = self.find(v);
        self.marked[r as usize]
    }

    pub fn component_count(&self) -> usize {
        self.components
    }
}
