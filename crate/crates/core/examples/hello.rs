fn main() {
    eprintln!("hello start");
    let g = isq_core::generators::gen_erdos_renyi(128, 640.0 / 8128.0, 7).unwrap();
    eprintln!("gen done m = {}", g.edge_count());
    let p = isq_core::params::Params::new(0.3 / 11.0, 128, 8128, isq_core::params::Tunables::desk()).unwrap();
    eprintln!("params done split {} top {} frac {}", p.split_exp, p.top_exp, p.frac_exp);
    eprintln!("t_chd {:.3e}", p.check_high_iters());
    eprintln!("t_cld {:.3e}", p.check_low_iters(p.alpha_pow(-1)));
    eprintln!("t_chl {:.3e}", p.check_hl_iters());
    let s = p.hde_schedule(p.split_exp + 1, 1.0);
    eprintln!("N {:.3e} p_pick {:.3e} q {:.3e} thr {:.3e}", s.iters, s.p_pick, s.q_incl, s.threshold);
}
