//! Exact GR of matrix multiplication tensors against the closed form.
//!
//! cargo run --release --example matmul_gr -- 3 3 3

use std::time::Instant;

use trl::bounds::matmul_gr_formula;
use trl::geometric::{cheapest_axis, gr_exact};
use trl::groebner::BuchbergerConfig;
use trl::tensor::matmul_tensor;

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("positive integers"))
        .collect();
    let shapes = match args[..] {
        [e, h, l] => vec![(e, h, l)],
        [] => vec![
            (1, 1, 1),
            (1, 2, 3),
            (2, 2, 2),
            (2, 2, 3),
            (2, 3, 3),
            (2, 3, 4),
            (3, 3, 3),
        ],
        _ => {
            eprintln!("usage: matmul_gr [e h l]");
            std::process::exit(2);
        }
    };
    for (e, h, l) in shapes {
        let t = matmul_tensor(e, h, l).expect("valid shape");
        let axis = cheapest_axis(&t);
        let start = Instant::now();
        let r = gr_exact(&t, axis, &BuchbergerConfig::default()).expect("within budget");
        println!(
            "<{e},{h},{l}>  axis {axis}  gr {}  formula {}  {:?}",
            r.gr,
            matmul_gr_formula(e, h, l),
            start.elapsed()
        );
    }
}
