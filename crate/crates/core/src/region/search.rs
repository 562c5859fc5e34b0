//! Grid-based membership certificates and boundary sampling.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::capacity::{region_box_fb, OperatingPoint, RateTriplet, RegionBox};
use crate::channel::ChannelConfig;

/// Rate slack (bits) absorbed when testing membership, covering rounding in
/// sums of corner rates.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-12;

const REFINE_ITERATIONS: usize = 60;

/// `k / (n - 1)` for `k = 0..n`.
pub fn unit_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2, "grid needs at least two points");
    let last = (n - 1) as f64;
    (0..n).map(|k| k as f64 / last).collect()
}

/// Precomputed region boxes over a uniform `(beta1, beta2, rho)` grid.
///
/// Without feedback the `rho` axis collapses to `{0}`.
#[derive(Debug, Clone)]
pub struct RegionGrid {
    cfg: ChannelConfig,
    feedback: bool,
    values: Vec<f64>,
    rho_values: Vec<f64>,
    boxes: Vec<RegionBox>,
}

impl RegionGrid {
    pub fn new(cfg: &ChannelConfig, feedback: bool, grid_n: usize) -> Self {
        let values = unit_grid(grid_n);
        let rho_values = if feedback { values.clone() } else { vec![0.0] };
        let mut boxes = Vec::with_capacity(values.len() * values.len() * rho_values.len());
        for &beta1 in &values {
            for &beta2 in &values {
                for &rho in &rho_values {
                    boxes.push(region_box_fb(cfg, OperatingPoint { beta1, beta2, rho }));
                }
            }
        }
        RegionGrid {
            cfg: *cfg,
            feedback,
            values,
            rho_values,
            boxes,
        }
    }

    pub fn feedback(&self) -> bool {
        self.feedback
    }

    fn operating_point(&self, index: usize) -> OperatingPoint {
        let nr = self.rho_values.len();
        let nb = self.values.len();
        OperatingPoint {
            beta1: self.values[index / (nb * nr)],
            beta2: self.values[(index / nr) % nb],
            rho: self.rho_values[index % nr],
        }
    }

    fn energy_scale(&self) -> f64 {
        self.cfg.max_energy_rate()
    }

    /// Operating point certifying that `t` is achievable, if one is found.
    ///
    /// A `None` only means no certificate exists at this resolution.
    pub fn certificate(&self, t: &RateTriplet) -> Option<OperatingPoint> {
        if !(t.r1 >= 0.0 && t.r2 >= 0.0) {
            return None;
        }
        let scale = self.energy_scale();
        let mut best = (f64::NEG_INFINITY, 0usize);
        for (k, bx) in self.boxes.iter().enumerate() {
            let s = bx.slack(t, scale);
            if s >= -MEMBERSHIP_TOLERANCE {
                return Some(self.operating_point(k));
            }
            if s > best.0 {
                best = (s, k);
            }
        }
        let refined = self.refine(self.operating_point(best.1), t);
        let s = region_box_fb(&self.cfg, refined).slack(t, scale);
        (s >= -MEMBERSHIP_TOLERANCE).then_some(refined)
    }

    pub fn contains(&self, t: &RateTriplet) -> bool {
        self.certificate(t).is_some()
    }

    /// One pass over the coordinates, each maximizing the slack within one
    /// grid step of the starting point by bisection on the slope sign.
    fn refine(&self, start: OperatingPoint, t: &RateTriplet) -> OperatingPoint {
        let step = self.values[1] - self.values[0];
        let scale = self.energy_scale();
        let mut op = start;
        let coords = if self.feedback { 3 } else { 2 };
        for c in 0..coords {
            let get = |op: &OperatingPoint| match c {
                0 => op.beta1,
                1 => op.beta2,
                _ => op.rho,
            };
            let with = |mut op: OperatingPoint, v: f64| {
                match c {
                    0 => op.beta1 = v,
                    1 => op.beta2 = v,
                    _ => op.rho = v,
                }
                op
            };
            let slack = |v: f64| region_box_fb(&self.cfg, with(op, v)).slack(t, scale);
            let x0 = get(&op);
            let (mut lo, mut hi) = ((x0 - step).max(0.0), (x0 + step).min(1.0));
            for _ in 0..REFINE_ITERATIONS {
                let mid = 0.5 * (lo + hi);
                let d = 1e-3 * (hi - lo);
                if slack(mid + d) > slack(mid - d) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let candidate = 0.5 * (lo + hi);
            if slack(candidate) > slack(x0) {
                op = with(op, candidate);
            }
        }
        op
    }
}

/// Whether `t` is certified achievable on a `grid_n` grid (with one
/// refinement pass). `false` means "not found at this resolution".
pub fn contains(cfg: &ChannelConfig, t: &RateTriplet, feedback: bool, grid_n: usize) -> bool {
    RegionGrid::new(cfg, feedback, grid_n).contains(t)
}

/// A boundary triplet together with the operating point that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    pub op: OperatingPoint,
    pub triplet: RateTriplet,
}

/// Corner rate pairs of one box, paired with its energy bound.
pub fn box_corners(bx: &RegionBox) -> [RateTriplet; 4] {
    let r1c = bx.r1_max.min(bx.rsum_max);
    let r2c = bx.r2_max.min(bx.rsum_max);
    [
        RateTriplet::new(r1c, 0.0, bx.b_max),
        RateTriplet::new(r1c, r2c.min(bx.rsum_max - r1c).max(0.0), bx.b_max),
        RateTriplet::new(r1c.min(bx.rsum_max - r2c).max(0.0), r2c, bx.b_max),
        RateTriplet::new(0.0, r2c, bx.b_max),
    ]
}

/// Pareto-dominant triplets over the operating-point grid, sorted by
/// decreasing `b`, then `r1`, then `r2`.
pub fn sample_boundary(cfg: &ChannelConfig, feedback: bool, resolution: usize) -> Vec<BoundarySample> {
    let grid = RegionGrid::new(cfg, feedback, resolution);
    let mut all = Vec::with_capacity(grid.boxes.len() * 4);
    for (k, bx) in grid.boxes.iter().enumerate() {
        let op = grid.operating_point(k);
        for triplet in box_corners(bx) {
            all.push(BoundarySample { op, triplet });
        }
    }
    pareto_filter(all)
}

fn key(x: f64) -> u64 {
    // order-preserving for nonnegative finite values; folds -0.0 into 0.0
    (x + 0.0).max(0.0).to_bits()
}

/// Keeps samples whose triplets are not weakly dominated by another sample;
/// of exact duplicates the first one in grid order survives.
pub fn pareto_filter(mut samples: Vec<BoundarySample>) -> Vec<BoundarySample> {
    samples.sort_by(|a, b| {
        let (x, y) = (&a.triplet, &b.triplet);
        y.b.total_cmp(&x.b)
            .then(y.r1.total_cmp(&x.r1))
            .then(y.r2.total_cmp(&x.r2))
    });
    samples.dedup_by(|later, earlier| later.triplet == earlier.triplet);

    // staircase of kept (r1, r2): r2 strictly decreasing in r1
    let mut stair: BTreeMap<u64, f64> = BTreeMap::new();
    let mut kept = Vec::new();
    for s in samples {
        let (r1, r2) = (s.triplet.r1, s.triplet.r2);
        let k = key(r1);
        if let Some((_, &top)) = stair.range(k..).next() {
            if top >= r2 {
                continue;
            }
        }
        let covered: Vec<u64> = stair
            .range(..=k)
            .rev()
            .take_while(|(_, &v)| v <= r2)
            .map(|(&kk, _)| kk)
            .collect();
        for kk in covered {
            stair.remove(&kk);
        }
        stair.insert(k, r2);
        kept.push(s);
    }
    kept
}

/// Indices into `inner` of samples that no sample of `outer` weakly
/// dominates. Empty when the outer sample set covers the inner one.
pub fn undominated(inner: &[BoundarySample], outer: &[BoundarySample]) -> Vec<usize> {
    let by_b_desc = |v: &[BoundarySample]| {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[b].triplet.b.total_cmp(&v[a].triplet.b));
        idx
    };
    let outer_order = by_b_desc(outer);
    let mut stair: BTreeMap<u64, f64> = BTreeMap::new();
    let mut next = 0;
    let mut missing = Vec::new();
    for k in by_b_desc(inner) {
        let t = &inner[k].triplet;
        while next < outer_order.len() && outer[outer_order[next]].triplet.b >= t.b {
            let o = &outer[outer_order[next]].triplet;
            let kk = key(o.r1);
            let covered = stair.range(kk..).next().is_some_and(|(_, &top)| top >= o.r2);
            if !covered {
                let drop: Vec<u64> = stair
                    .range(..=kk)
                    .rev()
                    .take_while(|(_, &v)| v <= o.r2)
                    .map(|(&x, _)| x)
                    .collect();
                for x in drop {
                    stair.remove(&x);
                }
                stair.insert(kk, o.r2);
            }
            next += 1;
        }
        let hit = stair.range(key(t.r1)..).next().is_some_and(|(_, &top)| top >= t.r2);
        if !hit {
            missing.push(k);
        }
    }
    missing.sort_unstable();
    missing
}
