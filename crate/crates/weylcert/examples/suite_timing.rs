use weylcert::relations::{relation_suite, run_suite};
use weylcert::localized::Alpha;
use num::BigRational;

fn main() {
    for d in [1usize, 2] {
        let rels = relation_suite(d, 3, 3);
        println!("d={} suite size {}", d, rels.len());
        for (n, den) in [(1i64, 2i64), (5, 2), (13, 10)] {
            let al = Alpha::new(BigRational::new(n.into(), den.into())).unwrap();
            let t = std::time::Instant::now();
            let failures = run_suite(d, &al, &rels);
            println!("  alpha={}/{}: {} failures in {:?}", n, den, failures.len(), t.elapsed());
            for (r, _) in failures.iter().take(5) {
                println!("    FAIL {}", r.instance_name());
            }
        }
    }
}
