//! Uniform-grid bucket index for proximity queries.

use std::collections::HashMap;

use crate::geom::{Bbox, Point2};

#[derive(Debug, Clone)]
pub(crate) struct Grid {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl Grid {
    pub fn new(cell: f64) -> Self {
        let cell = if cell.is_finite() && cell > 0.0 { cell } else { 1.0 };
        Self {
            cell,
            buckets: HashMap::new(),
        }
    }

    /// Cell size suited to `count` items spread over `bbox`.
    pub fn for_extent(bbox: &Bbox, count: usize) -> Self {
        let d = bbox.diagonal().max(1e-12);
        Self::new(d / (count.max(1) as f64).sqrt().max(1.0))
    }

    fn key(&self, p: Point2) -> (i64, i64) {
        (
            (p.x / self.cell).floor() as i64,
            (p.y / self.cell).floor() as i64,
        )
    }

    fn range(&self, b: &Bbox, pad: f64) -> ((i64, i64), (i64, i64)) {
        let lo = self.key(Point2::new(b.min.x - pad, b.min.y - pad));
        let hi = self.key(Point2::new(b.max.x + pad, b.max.y + pad));
        (lo, hi)
    }

    pub fn insert_point(&mut self, id: usize, p: Point2) {
        let k = self.key(p);
        self.buckets.entry(k).or_default().push(id);
    }

    pub fn insert_box(&mut self, id: usize, b: &Bbox) {
        let (lo, hi) = self.range(b, 0.0);
        for i in lo.0..=hi.0 {
            for j in lo.1..=hi.1 {
                self.buckets.entry((i, j)).or_default().push(id);
            }
        }
    }

    /// Ids whose cells meet `b` grown by `pad`; sorted and unique.
    pub fn query(&self, b: &Bbox, pad: f64) -> Vec<usize> {
        let (lo, hi) = self.range(b, pad);
        let mut out = Vec::new();
        for i in lo.0..=hi.0 {
            for j in lo.1..=hi.1 {
                if let Some(v) = self.buckets.get(&(i, j)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn query_point(&self, p: Point2, pad: f64) -> Vec<usize> {
        self.query(&Bbox { min: p, max: p }, pad)
    }
}
