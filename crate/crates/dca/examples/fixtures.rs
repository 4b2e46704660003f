//! Runs the counterexample registry and prints one line per fixture.
//! With an id argument, prints that fixture's evaluated objects instead.

fn main() {
    if let Some(id) = std::env::args().nth(1) {
        let Some(f) = dca::lab::fixtures::find(&id) else {
            eprintln!("unknown fixture {id}");
            std::process::exit(2);
        };
        for (name, o) in f.evaluate().expect("fixture evaluates") {
            println!("{name}: {}", dca::io::to_string(&o));
        }
        println!("{}", f.run().to_json());
        return;
    }
    let mut failed = 0;
    for f in dca::lab::registry() {
        let out = f.run();
        if !out.passed {
            failed += 1;
        }
        println!("{:<16} {}", f.id, if out.passed { "pass" } else { "FAIL" });
    }
    println!("{failed} failed");
}
