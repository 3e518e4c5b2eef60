//! Fixed-length bit vectors over GF(2).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A fixed-length vector of bits packed into 64-bit words.
///
/// Unused high bits of the last word are kept at zero, so equality and
/// hashing operate on the packed words directly.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Bits with a one at every index in `support`.
    ///
    /// # Panics
    /// If an index is out of range.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut b = Bits::zeros(len);
        for &i in support {
            b.flip(i);
        }
        b
    }

    /// Interprets every nonzero entry as a one.
    pub fn from_u8s(values: &[u8]) -> Self {
        values.iter().map(|&v| v != 0).collect()
    }

    /// The low `len` bits of `mask`, bit `i` at index `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "mask conversion limited to 64 bits");
        let mut b = Bits::zeros(len);
        if len > 0 {
            b.words[0] = if len == 64 {
                mask
            } else {
                mask & ((1u64 << len) - 1)
            };
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let m = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// # Panics
    /// If the lengths differ.
    pub fn xor_assign(&mut self, other: &Bits) {
        assert_eq!(
            self.len, other.len,
            "xor of bit vectors with different lengths"
        );
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &Bits) -> bool {
        assert_eq!(
            self.len, other.len,
            "dot of bit vectors with different lengths"
        );
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Bits {
        (0..self.len).map(|i| !self.get(i)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn to_u8s(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// The packed value, for vectors of at most 64 bits.
    pub fn as_mask(&self) -> u64 {
        assert!(self.len <= 64, "mask conversion limited to 64 bits");
        self.words.first().copied().unwrap_or(0)
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in iter {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1u64 << (len % 64);
            }
            len += 1;
        }
        Bits { len, words }
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_u8s().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u8>::deserialize(deserializer)?;
        if let Some(bad) = v.iter().find(|&&b| b > 1) {
            return Err(serde::de::Error::custom(format!(
                "bit value {bad} is not 0 or 1"
            )));
        }
        Ok(Bits::from_u8s(&v))
    }
}

/// Iterates over all `k`-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
