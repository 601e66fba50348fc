//! Walks → planar cell complex.
//!
//! Crossings sharing a wall segment are ordered by following both arcs
//! forward until they part; the exit positions in the strip where they part
//! decide which one lies above.

use super::cell::{Builder, CellComplex, Dir, EdgeKind, Layout, VertexKind};
use super::{ArcDiagram, ArcEnd, ArcError, ArcStart, Crossing, Mode, Seg};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Station {
    Seg(Seg),
    TopPoint,
    BottomPoint,
}

fn stations(mode: Mode) -> &'static [Station] {
    match mode {
        Mode::HalfArc => &[Station::Seg(Seg::U), Station::BottomPoint, Station::Seg(Seg::L)],
        Mode::Capped => &[
            Station::Seg(Seg::T),
            Station::TopPoint,
            Station::Seg(Seg::G),
            Station::BottomPoint,
            Station::Seg(Seg::L),
        ],
    }
}

fn station_index(mode: Mode, s: Station) -> usize {
    stations(mode).iter().position(|&x| x == s).expect("station exists in this mode")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Start(ArcStart),
    Cross(Crossing),
    End(ArcEnd),
}

fn items_of(w: &super::ArcWalk) -> Vec<Item> {
    let mut v = Vec::with_capacity(w.events.len() + 2);
    v.push(Item::Start(w.start));
    v.extend(w.events.iter().map(|&c| Item::Cross(c)));
    v.push(Item::End(w.end));
    v
}

fn reversed(items: &[Item]) -> Vec<Item> {
    items
        .iter()
        .rev()
        .map(|it| match *it {
            Item::Cross(c) => Item::Cross(Crossing { dir: -c.dir, ..c }),
            other => other,
        })
        .collect()
}

/// Position on the counterclockwise boundary of `strip`: side 0 is the top
/// boundary, 1 the left wall read downwards, 3 the right wall read upwards.
fn slot(mode: Mode, strip: usize, it: &Item) -> Result<(usize, usize), ArcError> {
    let n = stations(mode).len();
    let (wall, st) = match *it {
        Item::Cross(c) => (c.wall, Station::Seg(c.seg)),
        Item::Start(ArcStart::Boundary { .. }) => return Ok((0, 0)),
        Item::Start(ArcStart::Top { wall, .. }) => (wall, Station::TopPoint),
        Item::End(e) => (e.wall, Station::BottomPoint),
    };
    let idx = station_index(mode, st);
    if wall == strip {
        Ok((1, idx))
    } else if wall == strip + 1 {
        Ok((3, n - 1 - idx))
    } else {
        Err(ArcError::NonEmbeddedInput("walk leaves its strip"))
    }
}

/// True if crossing `a[ia]` lies above `b[ib]`; both cross the same segment left to right.
fn above(mode: Mode, a: &[Item], ia: usize, b: &[Item], ib: usize) -> Result<bool, ArcError> {
    let n = stations(mode).len();
    let Item::Cross(c0) = a[ia] else { unreachable!() };
    let mut strip = c0.wall;
    let mut entry = (1usize, station_index(mode, Station::Seg(c0.seg)));
    let mut k = 1;
    loop {
        let (xa, xb) = match (a.get(ia + k), b.get(ib + k)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(ArcError::DegeneratePosition("arcs run together to an endpoint")),
        };
        let same = matches!((xa, xb), (Item::Cross(p), Item::Cross(q)) if p == q);
        if !same {
            let pa = slot(mode, strip, xa)?;
            let pb = slot(mode, strip, xb)?;
            if pa == pb {
                return Err(ArcError::DegeneratePosition("two arcs leave a strip at the same point"));
            }
            let le = (entry.0 * 100 + entry.1) as i64;
            let da = ((pa.0 * 100 + pa.1) as i64 - le).rem_euclid(400);
            let db = ((pb.0 * 100 + pb.1) as i64 - le).rem_euclid(400);
            return Ok(da > db);
        }
        let Item::Cross(e) = *xa else { unreachable!() };
        strip = e.strip_after();
        let idx = station_index(mode, Station::Seg(e.seg));
        entry = if e.dir > 0 { (1, idx) } else { (3, n - 1 - idx) };
        k += 1;
    }
}

fn oriented(items: &[Item], i: usize) -> (Vec<Item>, usize) {
    match items[i] {
        Item::Cross(c) if c.dir > 0 => (items.to_vec(), i),
        _ => (reversed(items), items.len() - 1 - i),
    }
}

type Key = (usize, Seg);

/// Top-to-bottom order of crossings on each wall segment, as (arc, item index).
fn wall_orders(d: &ArcDiagram) -> Result<(Vec<Vec<Item>>, Vec<(Key, Vec<(usize, usize)>)>), ArcError> {
    let mode = d.config.mode;
    let all: Vec<Vec<Item>> = d.moving.iter().map(items_of).collect();
    let mut keys: Vec<Key> = Vec::new();
    let mut occ: BTreeMap<Key, Vec<(usize, usize)>> = BTreeMap::new();
    for (ai, it) in all.iter().enumerate() {
        for (j, x) in it.iter().enumerate() {
            if let Item::Cross(c) = x {
                let key = (c.wall, c.seg);
                if !occ.contains_key(&key) {
                    keys.push(key);
                }
                occ.entry(key).or_default().push((ai, j));
            }
        }
    }
    let cmp = |p: (usize, usize), q: (usize, usize)| -> Result<bool, ArcError> {
        let (a, ia) = oriented(&all[p.0], p.1);
        let (b, ib) = oriented(&all[q.0], q.1);
        above(mode, &a, ia, &b, ib)
    };
    let mut out = Vec::new();
    for key in keys {
        let lst = occ.remove(&key).unwrap_or_default();
        // insertion sort, then a full pairwise consistency check
        let mut sorted: Vec<(usize, usize)> = Vec::with_capacity(lst.len());
        for p in lst {
            let mut pos = sorted.len();
            while pos > 0 && cmp(p, sorted[pos - 1])? {
                pos -= 1;
            }
            sorted.insert(pos, p);
        }
        for x in 0..sorted.len() {
            for y in x + 1..sorted.len() {
                let hi = cmp(sorted[x], sorted[y])?;
                let lo = cmp(sorted[y], sorted[x])?;
                if !hi || lo {
                    return Err(ArcError::DegeneratePosition("inconsistent order along a wall"));
                }
            }
        }
        out.push((key, sorted));
    }
    Ok((all, out))
}

/// Compiles a diagram into a planar cell complex.
pub fn build_cell_complex(d: &ArcDiagram) -> Result<CellComplex, ArcError> {
    let mode = d.config.mode;
    let k = d.config.strands;
    let (items, orders) = wall_orders(d)?;
    let mut b = Builder::new();
    let mut zv = vec![0usize; k + 1];
    let mut ztv = vec![0usize; k + 1];
    for j in 1..=k {
        let (x, jj) = (2 * j as i64, j);
        match mode {
            Mode::HalfArc => {
                zv[j] = b.add_vertex(VertexKind::Marked { label: jj, wall: j, top: false }, [x, 0]);
            }
            Mode::Capped => {
                zv[j] = b.add_vertex(VertexKind::Marked { label: jj, wall: j, top: false }, [x, 0]);
                ztv[j] = b.add_vertex(VertexKind::Marked { label: k + jj, wall: j, top: true }, [x, 1000]);
            }
        }
    }
    let mut xv: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut order_of: BTreeMap<Key, &Vec<(usize, usize)>> = BTreeMap::new();
    for (key, lst) in &orders {
        let n = lst.len() as i64;
        for (t, &(ai, jj)) in lst.iter().enumerate() {
            let x = 2 * key.0 as i64;
            let (kind, y) = match key.1 {
                Seg::T => (VertexKind::Aux { wall: key.0, moving: ai + 1 }, 2000 + n - t as i64),
                Seg::L => continue,
                Seg::U => (VertexKind::Crossing { fixed: key.0, moving: ai + 1 }, 1 + n - t as i64),
                Seg::G => (VertexKind::Crossing { fixed: key.0, moving: ai + 1 }, 1 + n - t as i64),
            };
            xv.insert((ai, jj), b.add_vertex(kind, [x, y]));
        }
        order_of.insert(*key, lst);
    }
    let mut anchors = Vec::new();
    let mut top_anchor = vec![0usize; k + 1];
    let mut start_anchor: BTreeMap<usize, usize> = BTreeMap::new();
    for j in 0..=k {
        if j >= 1 {
            top_anchor[j] = b.add_vertex(VertexKind::Anchor, [2 * j as i64, 10_000]);
            anchors.push(top_anchor[j]);
        }
        if mode == Mode::HalfArc {
            for (ai, w) in d.moving.iter().enumerate() {
                if w.start == (ArcStart::Boundary { strip: j }) {
                    let v = b.add_vertex(VertexKind::Anchor, [2 * j as i64 + 1, 10_000]);
                    start_anchor.insert(ai, v);
                    anchors.push(v);
                }
            }
        }
    }
    for w in anchors.windows(2) {
        b.add_edge(w[0], Dir::E, w[1], Dir::W, EdgeKind::Boundary, None)?;
    }
    b.add_edge(*anchors.last().unwrap(), Dir::E, anchors[0], Dir::W, EdgeKind::Boundary, None)?;

    let seq_on = |key: Key| -> Vec<usize> {
        order_of.get(&key).map(|l| l.iter().rev().map(|p| xv[p]).collect()).unwrap_or_default()
    };
    let mut fixed_seq = Vec::with_capacity(k);
    for j in 1..=k {
        let mut seq = vec![zv[j]];
        match mode {
            Mode::HalfArc => {
                seq.extend(seq_on((j, Seg::U)));
                seq.push(top_anchor[j]);
                for p in seq.windows(2) {
                    b.add_edge(p[0], Dir::N, p[1], Dir::S, EdgeKind::Fixed, Some(j))?;
                }
                fixed_seq.push(seq);
            }
            Mode::Capped => {
                seq.extend(seq_on((j, Seg::G)));
                seq.push(ztv[j]);
                for p in seq.windows(2) {
                    b.add_edge(p[0], Dir::N, p[1], Dir::S, EdgeKind::Fixed, Some(j))?;
                }
                let mut aux = vec![ztv[j]];
                aux.extend(seq_on((j, Seg::T)));
                aux.push(top_anchor[j]);
                for p in aux.windows(2) {
                    b.add_edge(p[0], Dir::N, p[1], Dir::S, EdgeKind::Aux, None)?;
                }
                fixed_seq.push(seq);
            }
        }
    }
    let mut moving_seq = Vec::with_capacity(k);
    for (ai, w) in d.moving.iter().enumerate() {
        let (mut cur, mut dir) = match w.start {
            ArcStart::Boundary { .. } => {
                (*start_anchor.get(&ai).ok_or(ArcError::NonEmbeddedInput("missing start anchor"))?, Dir::S)
            }
            ArcStart::Top { wall, side } => (ztv[wall], if side > 0 { Dir::E } else { Dir::W }),
        };
        let mut seq = vec![cur];
        for (jj, it) in items[ai].iter().enumerate() {
            let Item::Cross(c) = it else { continue };
            if c.seg == Seg::L {
                continue;
            }
            let nv = xv[&(ai, jj)];
            let arrive = if c.dir > 0 { Dir::W } else { Dir::E };
            b.add_edge(cur, dir, nv, arrive, EdgeKind::Moving, Some(ai + 1))?;
            cur = nv;
            dir = if c.dir > 0 { Dir::E } else { Dir::W };
            seq.push(nv);
        }
        let end = zv[w.end.wall];
        let arrive = if w.end.side < 0 { Dir::W } else { Dir::E };
        b.add_edge(cur, dir, end, arrive, EdgeKind::Moving, Some(ai + 1))?;
        seq.push(end);
        moving_seq.push(seq);
    }
    let layout = match mode {
        Mode::HalfArc => Layout::HalfArc,
        Mode::Capped => Layout::Capped,
    };
    b.finish(layout, k, fixed_seq, moving_seq, true)
}
