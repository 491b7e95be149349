use std::collections::BTreeMap;
use superint_core::catalog::{entries, grid_residuals, WSource};

fn main() {
    let xs: Vec<f64> = (0..20).map(|i| 0.4 + 1.6 * i as f64 / 19.0).collect();
    let ys = xs.clone();
    let args: Vec<String> = std::env::args().skip(1).collect();
    for e in entries() {
        if !args.is_empty() && !args.contains(&e.id.to_string()) {
            continue;
        }
        let mut vals = BTreeMap::new();
        for p in &e.params {
            vals.insert(p.name, 0.5 * (p.lo + p.hi));
        }
        let eps = 1.0;
        let src = match WSource::build(e.id, &vals, 1.0, eps, (0.4, 2.0)) {
            Ok(s) => s,
            Err(err) => {
                println!("{}: BUILD ERR {err}", e.id);
                continue;
            }
        };
        match grid_residuals(e.id, &src, &xs, &ys) {
            Ok(rs) => {
                let sup = rs.iter().map(|r| r.sup).fold(0.0f64, f64::max);
                print!("{} sup={sup:.2e} | ", e.id);
                for r in rs {
                    print!("{}={:.1e} ", r.name, r.sup);
                }
                // V2 consistency
                let mut dv: f64 = 0.0;
                for &y in &ys {
                    if let (Ok(j), Ok(v2)) = (src.jets(y), src.v2_printed(y)) {
                        dv = dv.max((j[1] - v2).abs() / v2.abs().max(1.0));
                    } else {
                        dv = f64::NAN;
                    }
                }
                println!("| v2diff={dv:.1e}");
            }
            Err(err) => println!("{}: ERR {err}", e.id),
        }
    }
}
