/// Fixed-width dense bit array with shifted-OR transfer between arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DenseBits {
    words: Vec<u64>,
    len: usize,
}

impl DenseBits {
    pub fn new(len: usize) -> Self {
        DenseBits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_clear(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// `self |= src` with every bit `i` of `src` moved to `i + shift`; bits
    /// landing outside `[0, len)` are dropped.
    pub fn or_shifted(&mut self, src: &DenseBits, shift: i64) {
        debug_assert_eq!(self.len, src.len);
        let n = self.words.len();
        let magnitude = shift.unsigned_abs() as usize;
        let (word, bit) = (magnitude / 64, magnitude % 64);
        if word >= n {
            return;
        }
        let dst = &mut self.words;
        let src = &src.words;
        if shift >= 0 {
            for i in word..n {
                let mut v = src[i - word] << bit;
                if bit > 0 && i > word {
                    v |= src[i - word - 1] >> (64 - bit);
                }
                dst[i] |= v;
            }
        } else {
            for i in 0..n - word {
                let mut v = src[i + word] >> bit;
                if bit > 0 && i + word + 1 < n {
                    v |= src[i + word + 1] << (64 - bit);
                }
                dst[i] |= v;
            }
        }
        self.clear_tail();
    }

    fn clear_tail(&mut self) {
        let used = self.len % 64;
        if used > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}
