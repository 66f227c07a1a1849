//! Set partitions of small index sets.

/// All partitions of `{0, .., n-1}` into non-empty blocks. Blocks and the
/// partition itself come out in a deterministic order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    recurse(0, n, &mut current, &mut out);
    out
}

fn recurse(i: usize, n: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    if i == n {
        out.push(current.clone());
        return;
    }
    for b in 0..current.len() {
        current[b].push(i);
        recurse(i + 1, n, current, out);
        current[b].pop();
    }
    current.push(vec![i]);
    recurse(i + 1, n, current, out);
    current.pop();
}

/// Number of partitions (Bell number), for sanity checks.
pub fn bell(n: usize) -> u64 {
    set_partitions(n).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        assert_eq!(bell(0), 1);
        assert_eq!(bell(1), 1);
        assert_eq!(bell(2), 2);
        assert_eq!(bell(3), 5);
        assert_eq!(bell(4), 15);
        assert_eq!(bell(6), 203);
        assert_eq!(bell(8), 4140);
    }

    #[test]
    fn blocks_cover_and_are_disjoint() {
        for pi in set_partitions(5) {
            let mut seen = vec![false; 5];
            for block in &pi {
                assert!(!block.is_empty());
                for &x in block {
                    assert!(!seen[x]);
                    seen[x] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}
