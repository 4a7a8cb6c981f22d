use std::path::PathBuf;

use comass::chain::{fundamental_cycle, Chain, Cochain};
use comass::cli::run;
use comass::io;
use comass::lip::sphere_certificate;
use comass::models;

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("comass-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn put(dir: &PathBuf, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn cli(args: &[&str]) -> comass::cli::Output {
    run(std::iter::once("comass").chain(args.iter().copied()))
}

#[test]
fn comass_prints_value_and_a_reparsable_witness() {
    let d = scratch("comass");
    let x = put(&d, "x.sc", &io::write_complex(&models::simplex_boundary(3, 0)));
    let b = put(&d, "b.ch", "deg 2\nc 0 1 2 1\n");
    let o = cli(&["comass", "--complex", &x, "--cocycle", &b]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("# comass 1/4 * vol_2^{-1}\n"));
    let w: Chain = io::parse_cells(&o.stdout).unwrap();
    assert_eq!(w.l1_norm(), num::BigRational::from_integer(1.into()));
    assert_eq!(cli(&["comass", "--complex", &x, "--cocycle", &b]), o);

    let o = cli(&["comass", "--complex", &x, "--cocycle", &b, "--dual"]);
    assert!(o.stdout.starts_with("# dual 1/4\n"));
    let zhat: Cochain = io::parse_cells(&o.stdout).unwrap();
    assert_eq!(io::parse_cells::<comass::chain::Dual>(&io::write_cells(&zhat)).unwrap(), zhat);
}

#[test]
fn parse_errors_and_domain_errors() {
    let d = scratch("errors");
    let bad = put(&d, "bad.sc", "dim 1\ns 0 1\ns 1 x\n");
    let b = put(&d, "b.ch", "deg 1\nc 0 1 1\n");
    let o = cli(&["comass", "--complex", &bad, "--cocycle", &b]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
    let o = cli(&["nonsense"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("Usage"));

    let x = put(&d, "x.sc", &io::write_complex(&models::simplex_boundary(3, 0)));
    let face = put(&d, "face.ch", "deg 2\nc 0 1 2 1\n");
    let o = cli(&["surface", "--complex", &x, "--class", &face, "--scale", "1"]);
    assert_eq!(o.code, 1);
}

#[test]
fn certificates_accept_and_reject() {
    let d = scratch("cert");
    let (cert, target) = sphere_certificate(2, 1, 2);
    let dom = put(&d, "xs.sc", &io::write_complex(&cert.map.domain));
    let cod = put(&d, "snt.sc", &io::write_complex(&cert.map.codomain));
    let map = put(&d, "f.map", &io::write_vertex_map(&cert.map.vertex_map));
    let tgt = put(&d, "a.ch", &io::write_cells(&target));
    let args = ["check-cert", "--domain", &dom, "--map", &map, "--codomain", &cod, "--target", &tgt, "--s", "2", "--t", "1"];
    let o = cli(&args);
    assert_eq!((o.code, o.stdout.as_str()), (0, "ACCEPT bound 2\n"));

    let x = cert.map.domain.clone();
    let facet = x.simplices(2)[0].clone();
    let shifted = put(&d, "b.ch", &io::write_cells(&target.add(&Cochain::indicator(&facet))));
    let mut a2 = args;
    a2[8] = &shifted;
    let o = cli(&a2);
    assert_eq!((o.code, o.stdout.as_str()), (1, "REJECT class-mismatch\n"));

    let mut vm = cert.map.vertex_map.clone();
    let v = *vm.iter().find(|(_, &w)| w == 0).unwrap().0;
    vm.insert(v, 1);
    let broken = put(&d, "g.map", &io::write_vertex_map(&vm));
    let mut a3 = args;
    a3[4] = &broken;
    let o = cli(&a3);
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("REJECT non-simplicial"));
}

#[test]
fn surface_then_girth_round_trip() {
    let d = scratch("surface");
    let x = models::simplex_boundary(3, 0);
    let xs = put(&d, "x.sc", &io::write_complex(&x));
    let h = put(&d, "h.ch", &io::write_cells(&fundamental_cycle(&x, 2).unwrap()));
    let sig = d.join("sigma.sc").to_str().unwrap().to_string();
    let pm = d.join("p.map").to_str().unwrap().to_string();
    let o = cli(&["surface", "--complex", &xs, "--class", &h, "--scale", "1", "--out", &sig, "--map", &pm]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("genus 3"));
    let sigma = io::parse_complex(&std::fs::read_to_string(&sig).unwrap()).unwrap();
    assert_eq!(io::parse_complex(&io::write_complex(&sigma)).unwrap(), sigma);
    let o = cli(&["girth", "--domain", &sig, "--map", &pm, "--codomain", &xs, "--eps", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("dense=true delta="));
}

#[test]
fn gadget_min_comass_and_pipeline() {
    let d = scratch("gadget");
    let l = put(&d, "l.txt", "N 2 vecs 2\n1 0\n0 1\n");
    let cx = d.join("out").join("x.sc");
    let rep = d.join("out").join("r.txt");
    let o = cli(&["gadget", "--lattice", &l, "--dim", "2", "--out", cx.to_str().unwrap(), "--report", rep.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(std::fs::read_to_string(&rep).unwrap().contains("check ok: H_2(X) free of rank 2"));
    let g0 = d.join("out/gen_0.ch");
    let g1 = d.join("out/gen_1.ch");
    let gens = format!("{},{}", g0.display(), g1.display());
    let sigma0 = d.join("out/sigma_0.ch");
    let o = cli(&["min-comass", "--complex", cx.to_str().unwrap(), "--gens", &gens, "--bound", "1"]);
    assert_eq!(o.stdout, "value 3/4 * vol_2^{-1} coeffs 0 1\n");
    let mode = format!("one:{}", sigma0.display());
    let o = cli(&["min-comass", "--complex", cx.to_str().unwrap(), "--gens", &gens, "--bound", "1", "--mode", &mode]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    // (1,-1) and (1,0) tie at 3/4; the lexicographically lowest wins
    assert_eq!(o.stdout, "value 3/4 * vol_2^{-1} coeffs 1 -1\n");

    let o = cli(&["svp", "--lattice", &l, "--bound", "1"]);
    assert_eq!(o.stdout, "svp 1 coeffs 0 1 vector 0 1\n");
    let o = cli(&["pipeline", "--lattice", &l, "--dim", "2", "--bound", "1"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("svp_linf     1\n"));
    assert_eq!(cli(&["pipeline", "--lattice", &l, "--dim", "2", "--bound", "1"]), o);
}
