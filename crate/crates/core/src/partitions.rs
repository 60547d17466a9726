//! Set partitions as restricted growth strings.
//!
//! A partition of `{0, .., n-1}` is encoded by `a` with `a[0] = 0` and
//! `a[i] <= 1 + max(a[..i])`; element `i` lies in block `a[i]`. Strings are
//! produced in lexicographic order.

#[derive(Debug, Clone)]
pub struct SetPartitions {
    blocks: Vec<usize>,
    // prefix_max[i] = max(blocks[..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            blocks: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    /// Advances to the next partition and returns it, or `None` when all
    /// partitions have been produced.
    pub fn next_partition(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.blocks);
        }
        let n = self.blocks.len();
        // Rightmost position that may still grow.
        let Some(i) = (1..n)
            .rev()
            .find(|&i| self.blocks[i] <= self.prefix_max[i - 1])
        else {
            self.done = true;
            return None;
        };
        self.blocks[i] += 1;
        self.prefix_max[i] = self.prefix_max[i - 1].max(self.blocks[i]);
        for j in i + 1..n {
            self.blocks[j] = 0;
            self.prefix_max[j] = self.prefix_max[i];
        }
        Some(&self.blocks)
    }
}

/// Number of blocks in a restricted growth string.
pub fn block_count(blocks: &[usize]) -> usize {
    blocks.iter().max().map_or(0, |&m| m + 1)
}

/// Bell numbers `B(0..=n)` via the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        out.push(next[0]);
        row = next;
    }
    out
}
