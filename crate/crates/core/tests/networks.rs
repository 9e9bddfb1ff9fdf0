mod common;

use common::{real_vec, rng};
use proptest::prelude::*;
use rand::Rng;
use srdct::arith::{Counting, Cx};
use srdct::dct2::{dct2_generic, dct2_scaled_generic};
use srdct::fft_complex::fft_generic;
use srdct::fft_real::rfft_generic;
use srdct::network::{record, Edge, LinearNetwork, TraceError};
use srdct::oracle::{compare_real, naive_dct3};
use srdct::trig_family::{dct3_generic, dst2_generic, dst3_generic, record_rfft_scaled};
use srdct::{DctAlgorithm, FftVariant, FlopLedger, Normalization, ScaleTables, TrigKind};

type Runner<'a> = Box<dyn Fn(&mut Counting, &[f64]) -> Vec<f64> + 'a>;

fn flatten<V: Copy>(z: Vec<Cx<V>>) -> Vec<V> {
    z.into_iter().flat_map(|c| [c.re, c.im]).collect()
}

fn lanes<V: Copy>(z: Vec<Cx<V>>) -> Vec<V> {
    let last = z.len() - 1;
    let mut out = vec![z[0].re];
    for c in &z[1..last.max(1)] {
        out.extend([c.re, c.im]);
    }
    if last > 0 {
        out.push(z[last].re);
    }
    out
}

fn pair<V: Copy>(x: &[V]) -> Vec<Cx<V>> {
    x.chunks(2).map(|c| Cx::new(c[0], c[1])).collect()
}

fn dct2_net(
    tables: &ScaleTables,
    n: usize,
    algorithm: DctAlgorithm,
    norm: Normalization,
) -> LinearNetwork {
    record(n, |t, x| dct2_generic(t, tables, algorithm, norm, x)).unwrap()
}

fn inner(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

#[test]
fn recorded_dct2_counts() {
    let tables = ScaleTables::new(16).unwrap();
    let net = dct2_net(&tables, 16, DctAlgorithm::New, Normalization::TwoSided);
    assert_eq!(net.structural_flops().total(), 112);
    assert_eq!(net.euler_adds(), net.structural_flops().adds as i64);
    let classic = dct2_net(&tables, 16, DctAlgorithm::Classic, Normalization::TwoSided);
    assert_eq!(classic.structural_flops().total(), 114);
}

#[test]
fn recorded_scaled_rfft_count() {
    let tables = ScaleTables::new(16).unwrap();
    let net = record_rfft_scaled(&tables, 16).unwrap();
    assert_eq!(net.structural_flops().total(), 68);
}

#[test]
fn ledger_equals_structural_count() {
    let tables = ScaleTables::new(256).unwrap();
    for m in 1..=8u32 {
        let n = 1usize << m;
        let mut kernels: Vec<(String, usize, Runner, LinearNetwork)> = Vec::new();
        let tb = &tables;
        for variant in [
            FftVariant::Classic,
            FftVariant::Unscaled,
            FftVariant::Scaled1,
            FftVariant::Scaled2,
            FftVariant::Scaled4,
        ] {
            let net = record(2 * n, |t, x| {
                Ok(flatten(fft_generic(t, tb, variant, &pair(x))?))
            })
            .unwrap();
            kernels.push((
                format!("fft {variant:?}"),
                2 * n,
                Box::new(move |a, x| flatten(fft_generic(a, tb, variant, &pair(x)).unwrap())),
                net,
            ));
            let net = record(n, |t, x| Ok(lanes(rfft_generic(t, tb, variant, x)?))).unwrap();
            kernels.push((
                format!("rfft {variant:?}"),
                n,
                Box::new(move |a, x| lanes(rfft_generic(a, tb, variant, x).unwrap())),
                net,
            ));
        }
        for norm in Normalization::ALL {
            for algorithm in [DctAlgorithm::Classic, DctAlgorithm::New] {
                kernels.push((
                    format!("dct2 {algorithm:?} {norm:?}"),
                    n,
                    Box::new(move |a, x| dct2_generic(a, tb, algorithm, norm, x).unwrap()),
                    dct2_net(tb, n, algorithm, norm),
                ));
            }
            kernels.push((
                format!("dct3 {norm:?}"),
                n,
                Box::new(move |a, x| dct3_generic(a, tb, norm, x).unwrap()),
                record(n, |t, x| dct3_generic(t, tb, norm, x)).unwrap(),
            ));
            kernels.push((
                format!("dst2 {norm:?}"),
                n,
                Box::new(move |a, x| dst2_generic(a, tb, norm, x).unwrap()),
                record(n, |t, x| dst2_generic(t, tb, norm, x)).unwrap(),
            ));
            kernels.push((
                format!("dst3 {norm:?}"),
                n,
                Box::new(move |a, x| dst3_generic(a, tb, norm, x).unwrap()),
                record(n, |t, x| dst3_generic(t, tb, norm, x)).unwrap(),
            ));
        }
        kernels.push((
            "dct2 scaled".into(),
            n,
            Box::new(move |a, x| dct2_scaled_generic(a, tb, x).unwrap()),
            record(n, |t, x| dct2_scaled_generic(t, tb, x)).unwrap(),
        ));

        let mut r = rng(21 + m as u64);
        for (name, inputs, run, net) in kernels {
            let x = real_vec(&mut r, inputs);
            let mut ledger = FlopLedger::default();
            let direct = run(&mut Counting::new(&mut ledger), &x);
            assert_eq!(net.structural_flops(), ledger, "{name} N={n}");
            assert_eq!(net.euler_adds(), ledger.adds as i64, "{name} N={n}");
            let traced = net.eval(&x).unwrap();
            assert!(
                compare_real(&traced, &direct).max_rel < 1e-12,
                "{name} N={n}"
            );
        }
    }
}

#[test]
fn transposition_preserves_counts() {
    let tables = ScaleTables::new(256).unwrap();
    for m in 1..=8u32 {
        let n = 1usize << m;
        for algorithm in [DctAlgorithm::Classic, DctAlgorithm::New] {
            let net = dct2_net(&tables, n, algorithm, Normalization::TwoSided);
            let t = net.transpose();
            assert_eq!(t.structural_flops(), net.structural_flops(), "N={n}");
            assert_eq!(t.euler_adds(), net.euler_adds());
            assert_eq!(t.transpose(), net);
        }
        let net = record_rfft_scaled(&tables, n).unwrap();
        assert_eq!(
            net.transpose().structural_flops(),
            net.structural_flops(),
            "rfft N={n}"
        );
    }
}

#[test]
fn transposed_dct2_is_dct3() {
    let tables = ScaleTables::new(64).unwrap();
    let mut r = rng(22);
    for n in [2usize, 4, 16, 64] {
        let t = dct2_net(&tables, n, DctAlgorithm::New, Normalization::TwoSided).transpose();
        let x = real_vec(&mut r, n);
        let got = t.eval(&x).unwrap();
        let err = compare_real(&got, &naive_dct3(&x, Normalization::TwoSided));
        assert!(err.max_rel < 1e-12, "N={n} {err:?}");
        let compiled = t.compile();
        let mut ledger = FlopLedger::default();
        let fast = compiled.run(&mut Counting::new(&mut ledger), &x).unwrap();
        assert!(compare_real(&fast, &got).max_rel < 1e-14);
        assert_eq!(ledger, t.structural_flops());
    }
}

#[test]
fn adjoint_identity() {
    let tables = ScaleTables::new(64).unwrap();
    let mut r = rng(23);
    for n in [4usize, 16, 64] {
        let nets = [
            dct2_net(&tables, n, DctAlgorithm::New, Normalization::Unitary),
            record_rfft_scaled(&tables, n).unwrap(),
        ];
        for net in nets {
            let t = net.transpose();
            for _ in 0..100 {
                let x = real_vec(&mut r, n);
                let y = real_vec(&mut r, n);
                let lhs = inner(&y, &net.eval(&x).unwrap());
                let rhs = inner(&t.eval(&y).unwrap(), &x);
                assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()), "N={n}");
            }
        }
    }
}

#[test]
fn size_two_dct2_network() {
    let tables = ScaleTables::new(2).unwrap();
    let net = dct2_net(&tables, 2, DctAlgorithm::New, Normalization::TwoSided);
    let mut weights: Vec<f64> = net.edges().iter().map(|e| e.weight).collect();
    weights.sort_by(f64::total_cmp);
    let h = std::f64::consts::SQRT_2;
    assert!(weights.contains(&-1.0));
    assert!(weights.iter().filter(|&&w| w == 1.0).count() >= 3);
    assert!(weights.contains(&2.0));
    assert!(weights.iter().any(|&w| (w - h).abs() < 1e-15));
    assert_eq!(net.structural_flops(), FlopLedger::new(2, 2));
    let x = [0.25, -1.5];
    let y = net.eval(&x).unwrap();
    assert!((y[0] - 2.0 * (x[0] + x[1])).abs() < 1e-15);
    assert!((y[1] - h * (x[0] - x[1])).abs() < 1e-15);
}

#[test]
fn identity_network_is_free() {
    let net = record(5, |_, x| Ok(x.to_vec())).unwrap();
    assert_eq!(net.structural_flops(), FlopLedger::default());
    assert_eq!(net.euler_adds(), 0);
    assert_eq!(
        net.eval(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap(),
        vec![1.0, 2.0, 3.0, 4.0, 5.0]
    );
}

#[test]
fn eval_rejects_wrong_length() {
    let net = record(3, |_, x| Ok(x.to_vec())).unwrap();
    assert_eq!(
        net.eval(&[1.0]),
        Err(TraceError::LengthMismatch {
            expected: 3,
            got: 1
        })
    );
}

#[test]
fn edge_list_has_one_line_per_edge() {
    let tables = ScaleTables::new(8).unwrap();
    let net = dct2_net(&tables, 8, DctAlgorithm::New, Normalization::TwoSided);
    let mut buf = Vec::new();
    net.write_edge_list(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), net.edges().len());
    for line in body {
        let parts: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(parts.len(), 3);
        parts[2].parse::<f64>().unwrap();
    }
}

#[test]
fn family_kinds_trace() {
    let tables = ScaleTables::new(32).unwrap();
    for kind in TrigKind::ALL {
        let net = record(32, |t, x| match kind {
            TrigKind::Dct2 => {
                dct2_generic(t, &tables, DctAlgorithm::New, Normalization::TwoSided, x)
            }
            TrigKind::Dct3 => dct3_generic(t, &tables, Normalization::TwoSided, x),
            TrigKind::Dst2 => dst2_generic(t, &tables, Normalization::TwoSided, x),
            TrigKind::Dst3 => dst3_generic(t, &tables, Normalization::TwoSided, x),
        })
        .unwrap();
        assert_eq!(net.structural_flops().total(), 284, "{kind:?}");
    }
}

#[test]
fn unused_input_is_rejected() {
    let err = record(2, |_, x| Ok(vec![x[0]])).unwrap_err();
    assert_eq!(err, TraceError::UnusedInput(1));
}

/// Random layered DAG with every non-input vertex fed by at least one edge.
fn random_dag(seed: u64) -> (usize, Vec<Edge>, usize) {
    let mut r = rng(seed);
    let inputs = r.random_range(1..6);
    let vertices = inputs + r.random_range(1..30);
    let mut edges = Vec::new();
    for to in inputs..vertices {
        let fan = r.random_range(1..=to.min(4));
        let mut froms: Vec<usize> = (0..to).collect();
        for _ in 0..fan {
            let i = r.random_range(0..froms.len());
            let from = froms.swap_remove(i);
            let weight = match r.random_range(0..3) {
                0 => 1.0,
                1 => -1.0,
                _ => r.random_range(0.1..3.0),
            };
            edges.push(Edge { from, to, weight });
        }
    }
    (vertices, edges, inputs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_dag_add_formula(seed in any::<u64>()) {
        let (vertices, edges, inputs) = random_dag(seed);
        let mut indeg = vec![0i64; vertices];
        for e in &edges {
            indeg[e.to] += 1;
        }
        let direct: i64 = indeg[inputs..].iter().map(|d| d - 1).sum();
        let mults = edges.iter().filter(|e| e.weight.abs() != 1.0).count() as u64;
        let net = LinearNetwork::from_parts(vertices, edges, (0..inputs).collect(), vec![vertices - 1]).unwrap();
        prop_assert_eq!(net.euler_adds(), direct);
        prop_assert_eq!(net.structural_flops(), FlopLedger::new(direct as u64, mults));
        prop_assert_eq!(net.transpose().transpose(), net);
    }

    #[test]
    fn network_linearity(m in 1u32..=6, seed in any::<u64>(), alpha in -3.0f64..3.0) {
        let n = 1usize << m;
        let tables = ScaleTables::new(n).unwrap();
        let net = dct2_net(&tables, n, DctAlgorithm::New, Normalization::TwoSided).transpose();
        let mut r = rng(seed);
        let x = real_vec(&mut r, n);
        let y = real_vec(&mut r, n);
        let combo: Vec<f64> = x.iter().zip(&y).map(|(a, b)| alpha * a + b).collect();
        let fx = net.eval(&x).unwrap();
        let fy = net.eval(&y).unwrap();
        let want: Vec<f64> = fx.iter().zip(&fy).map(|(a, b)| alpha * a + b).collect();
        prop_assert!(compare_real(&net.eval(&combo).unwrap(), &want).max_rel < 1e-12);
    }
}
