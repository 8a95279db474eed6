use dumont_core::identities::{registry, run_info, CaseKind};
use dumont_core::numcheck::NumOptions;

#[test]
fn every_exact_case_at_default_range() {
    let num = NumOptions::default();
    let mut failed = Vec::new();
    for c in registry() {
        if let CaseKind::Exact { .. } = c.kind {
            let t = std::time::Instant::now();
            let r = run_info(&c, None, &num);
            println!("{} ({:.1}s)", r.one_line(), t.elapsed().as_secs_f64());
            for n in &r.notes {
                println!("    {n}");
            }
            if !r.passed() {
                failed.push(c.id);
            }
        }
    }
    assert!(failed.is_empty(), "{failed:?}");
}
