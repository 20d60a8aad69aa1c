//! Static range-minimum queries returning the position of the minimum.

/// Integer entry that may be `+∞`. `Inf` orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Finite(i64),
    Inf,
}

impl Slot {
    pub fn finite(self) -> Option<i64> {
        match self {
            Slot::Finite(v) => Some(v),
            Slot::Inf => None,
        }
    }
}

/// Sparse table of argmin positions over power-of-two windows.
///
/// `O(len log len)` preprocessing, `O(1)` queries. Among equal minima the
/// smallest index wins.
#[derive(Debug, Clone)]
pub struct RmqIndex<T> {
    values: Vec<T>,
    // levels[k - 1][i] = argmin of values[i .. i + 2^k]
    levels: Vec<Vec<u32>>,
}

impl<T: Ord + Copy> RmqIndex<T> {
    pub fn new(values: Vec<T>) -> Self {
        let len = values.len();
        let mut levels: Vec<Vec<u32>> = Vec::new();
        let mut width = 1usize;
        while width * 2 <= len {
            let next: Vec<u32> = (0..=len - width * 2)
                .map(|i| {
                    let (l, r) = match levels.last() {
                        Some(prev) => (prev[i], prev[i + width]),
                        None => (i as u32, (i + 1) as u32),
                    };
                    pick(&values, l, r)
                })
                .collect();
            levels.push(next);
            width *= 2;
        }
        RmqIndex { values, levels }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, i: usize) -> T {
        self.values[i]
    }

    /// Index of the minimum over `values[l..=r]`, or `None` when `l > r`.
    ///
    /// Panics if `r` is out of bounds.
    #[inline]
    pub fn argmin(&self, l: usize, r: usize) -> Option<usize> {
        if l > r {
            return None;
        }
        assert!(r < self.values.len(), "rmq range [{l}, {r}] out of bounds");
        let span = r - l + 1;
        let k = usize::BITS - 1 - span.leading_zeros();
        if k == 0 {
            return Some(l);
        }
        let level = &self.levels[k as usize - 1];
        let left = level[l];
        let right = level[r + 1 - (1 << k)];
        Some(pick(&self.values, left, right) as usize)
    }

    /// Heap footprint in bytes.
    pub fn heap_bytes(&self) -> usize {
        self.values.capacity() * std::mem::size_of::<T>()
            + self.levels.iter().map(|l| l.capacity() * 4).sum::<usize>()
    }
}

// `left` must not exceed `right`; ties keep `left`.
#[inline]
fn pick<T: Ord>(values: &[T], left: u32, right: u32) -> u32 {
    if values[right as usize] < values[left as usize] {
        right
    } else {
        left
    }
}
