//! Dense indexing of a finite comb shape for the walk-based estimators.

use crate::geometry::{directions, initial_rotor, ClusterShape, Vertex};

pub(crate) const NONE: u32 = u32::MAX;

pub(crate) struct Layout {
    m: i64,
    heights: Vec<i64>,
    offsets: Vec<usize>,
    /// Neighbours in clockwise rotor order; unused slots hold [`NONE`].
    pub(crate) nbrs: Vec<[u32; 4]>,
    pub(crate) degree: Vec<u8>,
    /// Position of the initial rotor inside `nbrs`.
    pub(crate) start: Vec<u8>,
    pub(crate) boundary: Vec<bool>,
    pub(crate) origin: usize,
}

impl Layout {
    pub(crate) fn new(shape: &ClusterShape) -> Self {
        let m = shape.m() as i64;
        let heights: Vec<i64> = (-m..=m).map(|x| shape.tooth_height(x).unwrap() as i64).collect();
        let mut offsets = Vec::with_capacity(heights.len() + 1);
        let mut total = 0;
        for h in &heights {
            offsets.push(total);
            total += (2 * h + 1) as usize;
        }
        offsets.push(total);
        let mut layout = Layout {
            m,
            heights,
            offsets,
            nbrs: vec![[NONE; 4]; total],
            degree: vec![0; total],
            start: vec![0; total],
            boundary: vec![false; total],
            origin: 0,
        };
        let boundary = shape.inner_boundary();
        for i in 0..total {
            let v = layout.vertex(i);
            let dirs = directions(v);
            layout.degree[i] = dirs.len() as u8;
            layout.start[i] = dirs.iter().position(|&d| d == initial_rotor(v)).unwrap() as u8;
            layout.boundary[i] = boundary.contains(&v);
            for (k, &d) in dirs.iter().enumerate() {
                if let Some(j) = layout.index(v.step(d)) {
                    layout.nbrs[i][k] = j as u32;
                }
            }
        }
        layout.origin = layout.index(Vertex::ORIGIN).unwrap();
        layout
    }

    pub(crate) fn len(&self) -> usize {
        self.degree.len()
    }

    pub(crate) fn index(&self, v: Vertex) -> Option<usize> {
        if v.x.abs() > self.m {
            return None;
        }
        let col = (v.x + self.m) as usize;
        let h = self.heights[col];
        (v.y.abs() <= h).then(|| self.offsets[col] + (v.y + h) as usize)
    }

    pub(crate) fn vertex(&self, i: usize) -> Vertex {
        let col = self.offsets.partition_point(|&o| o <= i) - 1;
        let h = self.heights[col];
        Vertex::new(col as i64 - self.m, (i - self.offsets[col]) as i64 - h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let shape = ClusterShape::cluster(4);
        let layout = Layout::new(&shape);
        assert_eq!(layout.len() as u64, shape.len());
        for (i, v) in shape.vertices().into_iter().enumerate() {
            assert_eq!(layout.index(v), Some(i));
            assert_eq!(layout.vertex(i), v);
        }
        assert_eq!(layout.index(Vertex::new(5, 0)), None);
        assert_eq!(layout.vertex(layout.origin), Vertex::ORIGIN);
        for i in 0..layout.len() {
            if !layout.boundary[i] {
                let d = layout.degree[i] as usize;
                assert!(layout.nbrs[i][..d].iter().all(|&j| j != NONE));
            }
        }
    }
}
