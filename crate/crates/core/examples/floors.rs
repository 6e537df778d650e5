use mhd_core::bilinear::estimate_constants;

fn main() {
    for (d, pairs) in [(2usize, vec![(2.5, 2.5), (3.5, 2.5), (3.5, 3.5), (4.5, 4.5), (5.5, 5.5), (4.5, 2.5)]),
                       (3usize, vec![(3.0, 3.0), (4.0, 3.0), (4.0, 4.0), (5.0, 5.0), (5.0, 3.0)])] {
        for (p, n) in pairs {
            for cutoff in [2, 3, 4] {
                let f = estimate_constants(p, n, d, cutoff, 400, 2026).unwrap();
                println!("d={d} p={p} n={n} M={cutoff}: K_floor={:.4} G_floor={:?}", f.k_lower,
                    f.g_lower.map(|g| format!("{g:.4}")));
            }
        }
    }
}
