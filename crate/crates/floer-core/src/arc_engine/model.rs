//! The standalone 2×2 grid: two upward fixed chords crossing two rightward
//! moving chords inside a disk.

use super::cell::{Builder, CellComplex, Dir, EdgeKind, Layout, VertexKind};
use alloc::vec::Vec;

/// Fixed chord `i` runs `b_i → x_i1 → x_i2 → t_i`; moving chord `j` runs
/// `l_j → x_1j → x_2j → r_j`.
pub fn build_model_2x2() -> CellComplex {
    let mut b = Builder::new();
    let mut x = [[0usize; 3]; 3];
    for i in 1..=2 {
        for j in 1..=2 {
            x[i][j] = b.add_vertex(VertexKind::Crossing { fixed: i, moving: j }, [i as i64, j as i64]);
        }
    }
    let anchor = |b: &mut Builder, p: [i64; 2]| b.add_vertex(VertexKind::Anchor, p);
    let bt = [0, anchor(&mut b, [1, 0]), anchor(&mut b, [2, 0])];
    let tp = [0, anchor(&mut b, [1, 3]), anchor(&mut b, [2, 3])];
    let lf = [0, anchor(&mut b, [0, 1]), anchor(&mut b, [0, 2])];
    let rt = [0, anchor(&mut b, [3, 1]), anchor(&mut b, [3, 2])];

    // boundary, counterclockwise
    let ring = [
        (bt[1], Dir::E, bt[2], Dir::W),
        (bt[2], Dir::E, rt[1], Dir::S),
        (rt[1], Dir::N, rt[2], Dir::S),
        (rt[2], Dir::N, tp[2], Dir::E),
        (tp[2], Dir::W, tp[1], Dir::E),
        (tp[1], Dir::W, lf[2], Dir::N),
        (lf[2], Dir::S, lf[1], Dir::N),
        (lf[1], Dir::S, bt[1], Dir::W),
    ];
    for (u, du, v, dv) in ring {
        b.add_edge(u, du, v, dv, EdgeKind::Boundary, None).expect("grid is generic");
    }
    let mut fixed_seq = Vec::new();
    let mut moving_seq = Vec::new();
    for i in 1..=2 {
        let seq = [bt[i], x[i][1], x[i][2], tp[i]];
        for p in seq.windows(2) {
            b.add_edge(p[0], Dir::N, p[1], Dir::S, EdgeKind::Fixed, Some(i)).expect("grid is generic");
        }
        fixed_seq.push(seq.to_vec());
    }
    for j in 1..=2 {
        let seq = [lf[j], x[1][j], x[2][j], rt[j]];
        for p in seq.windows(2) {
            b.add_edge(p[0], Dir::E, p[1], Dir::W, EdgeKind::Moving, Some(j)).expect("grid is generic");
        }
        moving_seq.push(seq.to_vec());
    }
    b.finish(Layout::Grid, 2, fixed_seq, moving_seq, false).expect("grid is planar")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc_engine::Decoration;

    #[test]
    fn grid_shape() {
        let c = build_model_2x2();
        assert_eq!((c.vertices.len(), c.edges.len(), c.faces.len()), (12, 20, 10));
        assert_eq!(c.euler_characteristic(), 1);
        assert!(c.marked_vertices().is_empty());
        let slots: usize = c.sites.iter().map(|s| s.slots.len()).sum();
        assert_eq!(slots, 8);
        assert!(c.sites.iter().all(|s| s.slots == [Decoration::Hat, Decoration::Check]));
        let free: Vec<_> = c.faces.iter().filter(|f| !f.outer && !f.excluded).collect();
        assert_eq!(free.len(), 1);
        assert_eq!(free[0].cycle.len(), 4);
    }
}
