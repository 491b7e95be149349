use superint_core::taylor::Taylor;
use superint_core::transcend::{
    sample_transcendent, taylor_at, ArgMap, InitialData, Kind, Params, PolePolicy, SolveConfig,
    TranscendentBinding,
};

// formula params
const S: f64 = 0.85;
const BETA: f64 = 0.2;
const GAMMA: f64 = 0.4;
const DELTA: f64 = -0.5;

fn w_taylor(b: &TranscendentBinding, traj: &superint_core::transcend::Trajectory, y: f64) -> Option<Taylor> {
    let nat = taylor_at(b, traj, y).ok()?;
    let yv = Taylor::var(y);
    let p = nat;
    let pd = p.deriv();
    if p.0[0].abs() < 0.05 {
        return None;
    }
    let ip = p.recip();
    let iy = yv.recip();
    let core = yv * pd * ip - Taylor::constant(1.0);
    let bracket = core * core.scale(0.25)
        - yv * yv * p * p.scale(S * S / 16.0)
        - yv * p.scale((BETA + 2.0 * S) / 8.0)
        + yv * ip.scale(GAMMA / 8.0)
        + yv * yv * ip * ip.scale(DELTA / 16.0);
    Some(bracket * iy.scale(-0.5) + iy.scale(1.0 / 8.0))
}

fn main() {
    // candidate (alpha, beta, gamma, delta) assignments for the standard P3
    let cands: Vec<(&str, Params)> = vec![
        ("orig s2,b,g,d", Params { alpha: S * S, beta: BETA, gamma: GAMMA, delta: DELTA, ..Params::default() }),
        ("perm b,g,s2,d", Params { alpha: BETA, beta: GAMMA, gamma: S * S, delta: DELTA, ..Params::default() }),
        ("perm g,b,s2,d", Params { alpha: GAMMA, beta: BETA, gamma: S * S, delta: DELTA, ..Params::default() }),
        ("perm s2,g,b,d", Params { alpha: S * S, beta: GAMMA, gamma: BETA, delta: DELTA, ..Params::default() }),
        ("perm b,d,s2,g", Params { alpha: BETA, beta: DELTA, gamma: S * S, delta: GAMMA, ..Params::default() }),
        ("perm s2,d,g,b", Params { alpha: S * S, beta: DELTA, gamma: GAMMA, delta: BETA, ..Params::default() }),
    ];
    for (name, params) in cands {
        let binding = TranscendentBinding {
            kind: Kind::P3,
            params,
            arg_map: ArgMap::Affine { a: 1.0, b: 0.0 },
            initial: InitialData::Anchor { at: 1.2, value: 1.0, slope: 0.3 },
        };
        let cfg = SolveConfig {
            pole_policy: PolePolicy::Stop,
            ..SolveConfig::for_window(0.35, 2.05)
        };
        let traj = match sample_transcendent(&binding, &cfg) {
            Ok(t) => t,
            Err(e) => {
                println!("{name}: sample ERR {e}");
                continue;
            }
        };
        // fit k1, k2 in hbar=1 VbII3 (c2=0):
        // y^2 W''' + 2 y W'' - 6 y^2 W'^2 - 2 W' + 2 W^2 - 4 y W W' + k1/2 y^2 + k2 = 0
        let ys: Vec<f64> = (0..30).map(|i| 0.4 + 1.6 * i as f64 / 29.0).collect();
        let mut rows = Vec::new();
        let mut ok = true;
        for &y in &ys {
            match w_taylor(&binding, &traj, y) {
                Some(t) => {
                    let w0 = t.derivative(0);
                    let w1 = t.derivative(1);
                    let w2 = t.derivative(2);
                    let w3 = t.derivative(3);
                    let base = y * y * w3 + 2.0 * y * w2 - 6.0 * y * y * w1 * w1 - 2.0 * w1
                        + 2.0 * w0 * w0
                        - 4.0 * y * w0 * w1;
                    rows.push((y, base));
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            println!("{name}: domain failure");
            continue;
        }
        // least squares for base + k1/2 y^2 + k2 = 0
        let n = rows.len() as f64;
        let (mut syy, mut sy2, mut s1, mut by2, mut b1) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(y, base) in &rows {
            let c1 = 0.5 * y * y;
            syy += c1 * c1;
            sy2 += c1;
            s1 += 1.0;
            by2 += c1 * base;
            b1 += base;
        }
        let _ = n;
        let det = syy * s1 - sy2 * sy2;
        let k1 = (-by2 * s1 + b1 * sy2) / det;
        let k2 = (-b1 * syy + by2 * sy2) / det;
        let sup = rows
            .iter()
            .map(|&(y, base)| (base + 0.5 * k1 * y * y + k2).abs())
            .fold(0.0f64, f64::max);
        println!("{name}: k1={k1:+.4e} k2={k2:+.4e} sup={sup:.2e}");
    }
}
