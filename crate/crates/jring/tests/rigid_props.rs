use jring::exact::linalg::det_bareiss;
use jring::rigid::{load_example, EXAMPLES};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// det B survives simultaneous row and column permutations inside each
/// block, and each block is closed (no entries leave it).
#[test]
fn determinant_is_invariant_under_in_block_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in EXAMPLES {
        let e = load_example(name).unwrap();
        let to_big = |m: &[Vec<i64>]| -> Vec<Vec<BigInt>> {
            m.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        let det = det_bareiss(&to_big(&e.b));
        let mut start = 0;
        let mut blocks = Vec::new();
        for size in e.block_sizes() {
            blocks.push(start..start + size);
            start += size;
        }
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..e.size()).collect();
            for b in &blocks {
                perm[b.clone()].shuffle(&mut rng);
            }
            let p: Vec<Vec<i64>> = perm
                .iter()
                .map(|&i| perm.iter().map(|&j| e.b[i][j]).collect())
                .collect();
            assert_eq!(det_bareiss(&to_big(&p)), det, "{name}");
        }
    }
}
