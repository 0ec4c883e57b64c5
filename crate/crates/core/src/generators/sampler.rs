//! Weighted node sampling in `O(log n)` per draw and per weight update.

use rand::Rng;

/// Fenwick tree over non-negative `f64` weights with fixed capacity.
#[derive(Debug, Clone)]
pub struct WeightTree {
    tree: Vec<f64>,
    weights: Vec<f64>,
    top_bit: usize,
}

impl WeightTree {
    pub fn with_capacity(capacity: usize) -> Self {
        let cap = capacity.max(1);
        WeightTree {
            tree: vec![0.0; cap + 1],
            weights: Vec::with_capacity(cap),
            top_bit: 1 << (usize::BITS - 1 - cap.leading_zeros()),
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.tree.len() - 1
    }

    fn add(&mut self, i: usize, delta: f64) {
        let mut j = i + 1;
        while j < self.tree.len() {
            self.tree[j] += delta;
            j += j & j.wrapping_neg();
        }
    }

    /// Appends a new slot; panics past capacity.
    pub fn push(&mut self, w: f64) -> usize {
        assert!(self.weights.len() < self.capacity(), "weight tree is full");
        debug_assert!(w >= 0.0);
        let i = self.weights.len();
        self.weights.push(w);
        self.add(i, w);
        i
    }

    pub fn set(&mut self, i: usize, w: f64) {
        debug_assert!(w >= 0.0);
        let old = self.weights[i];
        if old != w {
            self.weights[i] = w;
            self.add(i, w - old);
        }
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn total(&self) -> f64 {
        let mut j = self.len();
        let mut s = 0.0;
        while j > 0 {
            s += self.tree[j];
            j &= j - 1;
        }
        s
    }

    /// Smallest slot whose prefix sum exceeds `target`.
    fn find(&self, mut target: f64) -> usize {
        let mut pos = 0;
        let mut step = self.top_bit;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }

    /// Draws a slot with probability proportional to its weight, or `None`
    /// when every weight is zero.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        let total = self.total();
        if !(total > 0.0) {
            return None;
        }
        // rounding can land on a zero-weight slot or past the end; redraw then
        for _ in 0..64 {
            let i = self.find(rng.random::<f64>() * total);
            if i < self.len() && self.weights[i] > 0.0 {
                return Some(i);
            }
        }
        self.weights.iter().rposition(|&w| w > 0.0)
    }
}
