//! One adapter per subcommand: parse, call the library, render.

use serde_json::{json, Value};
use univoque::basespec::{parse_base_spec, parse_point};
use univoque::classify::{self, AdmissibleMode, BaseClass, PointClass};
use univoque::enumerate;
use univoque::expansions::{self, greedy_expand, lazy_expand, pi_q, quasi_greedy_expand};
use univoque::landmarks::{self, Dimension, Seed};
use univoque::numerics::{refine_interval, BaseValue, FieldElement};
use univoque::words::{Digits, EPSequence, Word};
use univoque::Result;

use crate::report::{base_json, point_json, verdict_text, Outcome};
use crate::{Command, Global, Kind, LandmarkKind, Mode};

fn base(o: &mut Outcome, text: &str, g: &Global) -> Result<BaseValue> {
    let q = parse_base_spec(text, g.m)?;
    o.input("q", base_json(text, &q, g.precision));
    Ok(q)
}

fn point(o: &mut Outcome, text: &str, q: &BaseValue) -> Result<FieldElement> {
    let x = parse_point(text, q)?;
    o.input("x", json!({ "spec": text, "exact": x.to_string(), "approx": x.to_f64() }));
    Ok(x)
}

fn digits_json(d: &Digits) -> Value {
    json!({ "digits": d.to_string(), "exact": d.exact().is_some(), "known_len": d.known_len() })
}

const SHOWN_DIGITS: usize = 64;

/// Text rendering; long prefixes are cut to their first digits.
fn show(d: &Digits) -> String {
    match d {
        Digits::Exact(s) => s.to_string(),
        Digits::Prefix(w) if w.len() <= SHOWN_DIGITS => format!("{w}...  (prefix; orbit did not close within the depth budget)"),
        Digits::Prefix(w) => format!("{}...  (first {SHOWN_DIGITS} of {} digits; orbit did not close)", w.prefix(SHOWN_DIGITS), w.len()),
    }
}

pub fn run(cmd: &Command, g: &Global) -> Result<Outcome> {
    let mut o = Outcome::default();
    o.input("depth", json!(g.depth));
    match cmd {
        Command::Expand { q, x, kind } => {
            let q = base(&mut o, q, g)?;
            let x = point(&mut o, x, &q)?;
            let e = match kind {
                Kind::Greedy => greedy_expand(&x, &q, g.depth)?,
                Kind::Quasi => quasi_greedy_expand(&x, &q, g.depth)?,
                Kind::Lazy => lazy_expand(&x, &q, g.depth)?,
            };
            let label = match kind {
                Kind::Greedy => "greedy",
                Kind::Quasi => "quasi-greedy",
                Kind::Lazy => "lazy",
            };
            o.input("kind", json!(label));
            o.result = digits_json(&e.digits);
            o.line(format!("{label} expansion: {}", show(&e.digits)));
        }
        Command::Pi { q, seq } => {
            let q = base(&mut o, q, g)?;
            let s = EPSequence::parse(seq, q.m())?;
            o.input("seq", json!(s.to_string()));
            let v = pi_q(&s, &q)?;
            o.result = point_json(&v);
            o.line(format!("value: {v}  (~ {:.15})", v.to_f64()));
        }
        Command::ClassifyBase { q } => {
            let q = base(&mut o, q, g)?;
            let c = classify::classify_base(&q, g.depth)?;
            o.unknown = c.class == BaseClass::Unknown;
            o.result = json!({
                "class": c.class,
                "label": c.class.label(),
                "alpha": c.alpha.to_string(),
                "beta": c.beta.to_string(),
            });
            o.verdict("v", &c.v);
            if let Some(v) = &c.closure_u {
                o.verdict("closure_u", v);
            }
            if let Some(v) = &c.u {
                o.verdict("u", v);
            }
            o.line(c.class.label());
            if let BaseClass::InVNotClosureU { k } = c.class {
                o.line(format!("reflection index k = {k}"));
            }
            o.line(format!("alpha = {}", show(&c.alpha)));
            o.line(format!("beta  = {}", show(&c.beta)));
        }
        Command::ClassifyPoint { q, x } => {
            let q = base(&mut o, q, g)?;
            let x = point(&mut o, x, &q)?;
            let c = classify::classify_point(&x, &q, g.depth)?;
            o.unknown = c.class == PointClass::Unknown;
            o.result = json!({ "class": c.class, "quasi_greedy": c.quasi_greedy.to_string(), "alpha": c.alpha.to_string() });
            o.verdict("univoque", &c.univoque);
            if let Some(v) = &c.v {
                o.verdict("v", v);
            }
            let label = match c.class {
                PointClass::InUq => "in U_q".to_string(),
                PointClass::InVqNotUq(t) => format!("in V_q \\ U_q ({})", match t {
                    classify::GreedyTail::Aq => "A_q, finite greedy expansion",
                    classify::GreedyTail::Bq => "B_q, infinite greedy expansion",
                    classify::GreedyTail::Undetermined => "greedy expansion undetermined",
                }),
                PointClass::NotInVq => "not in V_q".to_string(),
                PointClass::Unknown => "unknown".to_string(),
            };
            o.line(label);
            o.line(format!("a(x, q) = {}", show(&c.quasi_greedy)));
            o.line(format!("unique expansion test: {}", verdict_text(&c.univoque)));
        }
        Command::Admissible { seq, mode } => {
            let m = g.m.unwrap_or(1);
            let s = EPSequence::parse(seq, m)?;
            o.input("seq", json!(s.to_string())).input("M", json!(m));
            let (label, mode) = match mode {
                Mode::Beta => ("beta", AdmissibleMode::BetaOfOne),
                Mode::Alpha => ("alpha", AdmissibleMode::AlphaOfOne),
            };
            o.input("mode", json!(label));
            let v = classify::is_admissible(&s, mode);
            o.result = json!({ "admissible": v.is_in() });
            o.verdict("verdict", &v);
            o.line(format!("{s} as {label}(q): {}", verdict_text(&v)));
        }
        Command::Landmarks { which } => landmarks_cmd(&mut o, which, g)?,
        Command::BaseOfWord { word } => {
            let w = Word::parse(word, g.m.unwrap_or(1))?;
            o.input("word", json!(w.to_string()));
            let q = landmarks::base_of_word(&w)?;
            let class = classify::classify_base(&q, g.depth)?.class;
            o.result = json!({ "base": base_json(word, &q, g.precision), "class": class, "label": class.label() });
            o.line(format!("q = {q}"));
            o.line(format!("class: {}", class.label()));
        }
        Command::NextVBase { q, max_period } => {
            let q = base(&mut o, q, g)?;
            o.input("max_period", json!(max_period));
            let c = landmarks::find_next_v_base(&q, *max_period, g.depth)?;
            o.result = serde_json::to_value(&c).expect("component data serializes");
            o.line(format!("left end:  {}", c.q1.as_ref().map_or("1".to_string(), ToString::to_string)));
            o.line(format!("right end: {}", c.q2));
            o.line(format!("alpha(right end) = {}", c.alpha()));
        }
        Command::Sft { q, max_period } => {
            let q = base(&mut o, q, g)?;
            o.input("max_period", json!(max_period));
            let c = landmarks::find_next_v_base(&q, *max_period, g.depth)?;
            let forbidden = landmarks::sft_blocks(&c);
            let all = landmarks::sft_blocks_with_reflections(&forbidden);
            let shown: Vec<String> = all.iter().map(ToString::to_string).collect();
            o.result = json!({ "blocks": shown, "forbidden": forbidden, "k": c.k, "alpha_pattern": c.alpha_pattern });
            o.line(format!("{{{}}}", shown.join(", ")));
        }
        Command::EnumerateOne { q } => {
            let q = base(&mut o, q, g)?;
            let list = enumerate::expansions_of_one(&q, g.depth)?;
            o.result = json!({ "list": list.to_string(), "schemas": list.schemas });
            o.line(list.to_string());
        }
        Command::EnumeratePoint { q, x } => {
            let q = base(&mut o, q, g)?;
            let x = point(&mut o, x, &q)?;
            let list = enumerate::expansions_of_point(&x, &q, g.depth)?;
            o.result = json!({ "list": list.to_string(), "schemas": list.schemas });
            o.line(list.to_string());
        }
        Command::Tree { q, x, n, cap } => {
            let q = base(&mut o, q, g)?;
            let x = point(&mut o, x, &q)?;
            o.input("n", json!(n)).input("cap", json!(cap));
            let t = enumerate::expansion_tree(&x, &q, *n, *cap)?;
            o.result = serde_json::to_value(&t).expect("trees serialize");
            o.line(format!("counts: {:?}", t.counts));
            if t.prefixes.len() <= 64 {
                let shown: Vec<String> = t.prefixes.iter().map(ToString::to_string).collect();
                o.line(format!("prefixes: {}", shown.join(" ")));
            } else {
                o.line(format!("{} prefixes (use --json for all)", t.prefixes.len()));
            }
        }
        Command::Gap { q, x } => {
            let q = base(&mut o, q, g)?;
            let x = point(&mut o, x, &q)?;
            let gap = enumerate::gap_right_endpoint(&x, &q, g.depth)?;
            o.unknown = gap.x_right.is_none();
            o.result = serde_json::to_value(&gap).expect("gaps serialize");
            o.line(format!("b(x_L) = {}", gap.left_greedy));
            o.line(format!("right end digits: {}", show(&gap.right_digits)));
            match &gap.x_right {
                Some(xr) => o.line(format!("x_R = {xr}  (~ {:.15})", xr.to_f64())),
                None => o.line("x_R has no exact value at this depth"),
            };
        }
        Command::Approximants { q, x, count } => {
            let q = base(&mut o, q, g)?;
            let x = point(&mut o, x, &q)?;
            o.input("count", json!(count));
            let list = enumerate::aq_approximants(&x, &q, *count, g.depth)?;
            o.result = serde_json::to_value(&list).expect("approximants serialize");
            for a in &list {
                o.line(format!("cut {:>3}: {}  (~ {:.15})", a.cut, a.greedy, a.x.to_f64()));
            }
        }
        Command::BakerBound { q, x } => {
            let q = base(&mut o, q, g)?;
            let x = point(&mut o, x, &q)?;
            let b = enumerate::branching_dim_lower_bound(&x, &q)?;
            o.result = serde_json::to_value(b).expect("bounds serialize");
            o.line(format!("k = {}, bound = {:.6}", b.k, b.bound));
        }
        Command::Dim { q, counts, span } => {
            let q = base(&mut o, q, g)?;
            let d = landmarks::hausdorff_dim_integer_base(&q)?;
            let mut result = json!({ "dimension": d });
            match d {
                Dimension::Value(v) => o.line(format!("dimension = {v:.12}")),
                Dimension::TwoPointSet => o.line("U_q = {0, M/(q-1)}"),
                Dimension::FullMeasure => o.line("U_q has full measure"),
            };
            if let Some(n) = counts {
                o.input("counts", json!(n)).input("span", json!(span));
                let c = enumerate::univoque_prefix_counts(&q, *n, *span, g.depth)?;
                o.line(format!("extendable words: {c:?}"));
                if c.len() >= 2 && c[c.len() - 2] > 0 {
                    let rate = c[c.len() - 1] as f64 / c[c.len() - 2] as f64;
                    result["growth_rate"] = json!(rate);
                    o.line(format!("growth rate N_n / N_(n-1) = {rate:.6}"));
                }
                result["counts"] = json!(c);
            }
            o.result = result;
        }
    }
    Ok(o)
}

fn landmarks_cmd(o: &mut Outcome, which: &LandmarkKind, g: &Global) -> Result<()> {
    let m = g.m.unwrap_or(1);
    o.input("M", json!(m));
    match which {
        LandmarkKind::Kl { digits } => {
            o.input("landmark", json!("kl"));
            let (q, iv) = landmarks::kl_enclosure(m, g.precision);
            let alpha = landmarks::thue_morse_alpha(m, *digits);
            o.result = json!({ "base": q.to_string(), "alpha_prefix": alpha, "approx": (iv.lo_f64() + iv.hi_f64()) / 2.0 });
            o.certificate("interval", serde_json::to_value(&iv).expect("intervals serialize"));
            o.line(format!("q_KL(M={m}) in [{:.15}, {:.15}]  ({} bits)", iv.lo_f64(), iv.hi_f64(), g.precision));
            o.line(format!("alpha = {alpha}..."));
        }
        LandmarkKind::Golden => {
            o.input("landmark", json!("golden"));
            let q = landmarks::generalized_golden(m)?;
            o.result = base_json(&format!("golden:M={m}"), &q, g.precision);
            let alpha = expansions::alpha(&q, g.depth)?;
            o.result["alpha"] = json!(alpha.to_string());
            o.line(format!("q = {q}"));
            o.line(format!("alpha = {alpha}"));
        }
        LandmarkKind::Ladder { n, seed } => {
            o.input("landmark", json!("ladder")).input("n", json!(n));
            let seed = match seed {
                Some(w) => {
                    o.input("seed", json!(w));
                    Seed::FiniteBeta(Word::parse(w, m)?)
                }
                None => Seed::One,
            };
            let words = landmarks::component_words(m, &seed, *n)?;
            let mut rungs = Vec::new();
            for w in &words {
                let entry = match landmarks::base_of_word(w) {
                    Ok(q) => {
                        let iv = refine_interval(&q, g.precision);
                        o.line(format!("{w}  q ~ {:.12}", q.approx()));
                        json!({ "word": w, "base": q.to_string(), "approx": q.approx(), "interval": iv })
                    }
                    Err(_) => {
                        o.line(format!("{w}  q = 1"));
                        json!({ "word": w, "base": "1", "approx": 1.0 })
                    }
                };
                rungs.push(entry);
            }
            o.result = json!({ "rungs": rungs });
        }
    }
    Ok(())
}
