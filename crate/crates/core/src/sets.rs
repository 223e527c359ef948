//! Bitmask subset helpers shared by the lattice constructions and the
//! subset dynamic programs. Element `j` (0-based) lives at bit `j`.

/// All size-`len` subsets of `{0, .., n-1}`, ascending by mask value.
pub fn subsets_of_size(n: u32, len: u32) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rec = |mask: u64| out.push(mask);
    fn go(n: u32, len: u32, start: u32, mask: u64, out: &mut dyn FnMut(u64)) {
        if len == 0 {
            out(mask);
            return;
        }
        for j in start..=(n - len) {
            go(n, len - 1, j + 1, mask | (1 << j), out);
        }
    }
    go(n, len, 0, 0, &mut rec);
    out.sort_unstable();
    out
}

/// All subsets of `{0, .., n-1}` of size at most `max_len`, ascending.
pub fn subsets_up_to(n: u32, max_len: u32) -> Vec<u64> {
    let mut out: Vec<u64> = (0..=max_len).flat_map(|l| subsets_of_size(n, l)).collect();
    out.sort_unstable();
    out
}

pub fn elements(mask: u64) -> impl Iterator<Item = u32> {
    (0..64).filter(move |j| mask >> j & 1 == 1)
}

/// True when inserting `j` into the sorted set `mask` needs an odd number of
/// swaps, i.e. when an odd number of elements of `mask` exceed `j`.
pub fn insert_parity(mask: u64, j: u32) -> bool {
    (mask >> (j + 1)).count_ones() % 2 == 1
}

/// Human-readable 1-based set label, e.g. `{1,3}`.
pub fn mask_label(mask: u64) -> String {
    let inner: Vec<String> = elements(mask).map(|j| (j + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `sum_{i<=r} C(n, i)`, the size of a downward-closed subset family.
pub fn binomial_tail(n: u64, r: u64) -> u128 {
    (0..=r.min(n)).map(|i| binomial(n, i)).sum()
}
