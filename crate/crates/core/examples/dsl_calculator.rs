//! Parses, prints, and evaluates expressions in the three-argument context.

use modent::dsl::{self, Bindings, TRIPLE_VARS};

fn main() {
    let (x, y, z) = ([0.2], [0.3], [0.5]);
    let bindings = Bindings::triple(&x, &y, &z);
    let sources = [
        "2+3*4^2",
        "-2^2",
        "-x[0]*ln(x[0]) - y[0]*ln(y[0]) - z[0]*ln(z[0])",
        "log2(8) + log10(1000) + exp(0) + abs(-pi) - e",
        "(-8)^0.5",
        "s[0]",
    ];
    for src in sources {
        match dsl::parse(src, 1, TRIPLE_VARS) {
            Ok(e) => match e.eval(&bindings) {
                Ok(v) => println!("{src:<48} => {e} = {v}"),
                Err(err) => println!("{src:<48} => {e}: {err}"),
            },
            Err(err) => println!("{src:<48} parse error: {err}"),
        }
    }
}
