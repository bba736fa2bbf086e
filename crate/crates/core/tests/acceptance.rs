// One PASS/FAIL line per criterion, nonzero exit if any fail. The criteria and
// their pinned limits live in `prymrank::acceptance`.

fn main() {
    let mut failed = 0;
    for o in prymrank::acceptance::run_all() {
        failed += !o.pass as usize;
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {} {}: {} ({:.1}s)", o.criterion, o.name, o.detail, o.elapsed.as_secs_f64());
    }
    let total = prymrank::acceptance::CRITERIA.len();
    println!("acceptance: {} of {total} criteria pass", total - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
