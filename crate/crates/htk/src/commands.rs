use std::collections::BTreeMap;

use htk_core::classify::{classify, SymmetryClass};
use htk_core::covariants::{covariants, invariants};
use htk_core::elasticity::{decompose_elasticity, recompose_elasticity};
use htk_core::factorization::{factor_equal_orders, maxwell_multipoles, square_difference};
use htk_core::kelvin::kelvin_from_harm4;
use htk_core::normal_form::{normal_form, sample_params, ClassTag, Params};
use htk_core::reconstruction::{
    reconstruct_orthotropic, reconstruct_transverse, tetragonal_params, tetragonal_split, trigonal_params,
    trigonal_split, SigmaDelta,
};
use htk_core::{harmonic_decompose, harmonic_product, HarmTensor, Rotation, SymTensor};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::document::{Kind, Tensor, TensorDocument, SCHEMA};
use crate::error::CliError;
use crate::json::{harmonic, mat3, vec3};
use crate::{ClassArgs, ClassChoice, Cli, Command, GenClass, GenerateArgs};

/// Runs `f` on one document, or on each element of an array of documents.
pub fn for_each_document(
    text: &str,
    mut f: impl FnMut(Tensor) -> Result<Value, CliError>,
) -> Result<Value, CliError> {
    let mut one = |v: Value| -> Result<Value, CliError> {
        let doc: TensorDocument = serde_json::from_value(v)?;
        f(doc.tensor()?)
    };
    match serde_json::from_str(text)? {
        Value::Array(docs) => docs.into_iter().map(&mut one).collect::<Result<Vec<_>, _>>().map(Value::Array),
        v => one(v),
    }
}

fn envelope(command: &str, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    if let Value::Object(f) = fields {
        m.extend(f);
    }
    Value::Object(m)
}

fn harm4(t: &Tensor) -> Result<HarmTensor, CliError> {
    match t {
        Tensor::Elasticity(e) => Ok(decompose_elasticity(e).h),
        Tensor::Harmonic4(h) => Ok(h.clone()),
        Tensor::Symmetric2(_) => Err(CliError::Dimension(
            "this command needs a fourth-order document (elasticity or harmonic4)".into(),
        )),
    }
}

/// Harmonic tensor of any order: the deviator for second-order documents.
fn harm_any(t: &Tensor) -> Result<HarmTensor, CliError> {
    match t {
        Tensor::Symmetric2(m) => Ok(HarmTensor::from_deviator(m)),
        _ => harm4(t),
    }
}

fn rel(a: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        a
    } else {
        a / scale
    }
}

pub fn dispatch(cmd: &Command, t: Tensor, cli: &Cli) -> Result<Value, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let (name, body) = match cmd {
        Command::Decompose => ("decompose", decompose(&t)),
        Command::Invariants => ("invariants", invariant_fields(&harm4(&t)?)?),
        Command::Covariants => {
            let c = covariants(&harm4(&t)?)?;
            let m: Map<String, Value> = (2..=10).map(|k| (format!("d{k}"), mat3(c.get(k)))).collect();
            ("covariants", Value::Object(m))
        }
        Command::Multipoles => {
            let h = harm_any(&t)?;
            let m = maxwell_multipoles(&h, &mut rng)?;
            let vectors: Vec<Value> = m.vectors.iter().map(|&v| vec3(v)).collect();
            (
                "multipoles",
                json!({"vectors": vectors, "residual": m.residual, "ill_conditioned": m.ill_conditioned}),
            )
        }
        Command::Factorize { factor_order } => {
            let h = harm_any(&t)?;
            let n = *factor_order;
            if n == 0 || h.order() % n != 0 {
                return Err(CliError::Usage(format!(
                    "--factor-order {n} does not divide the tensor order {}",
                    h.order()
                )));
            }
            let factors = factor_equal_orders(&h, h.order() / n, n, &mut rng)?;
            let product = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| harmonic_product(&acc, f));
            let list: Vec<Value> = factors.iter().map(harmonic).collect();
            ("factorize", json!({"factors": list, "residual": product.rel_dist(&h)}))
        }
        Command::SquareDiff => {
            let h = harm_any(&t)?;
            let (h1, h2) = square_difference(&h, &mut rng)?;
            let back = &harmonic_product(&h1, &h1) - &harmonic_product(&h2, &h2);
            let residual = rel((&back - &h).norm(), h.norm());
            ("square-diff", json!({"h1": harmonic(&h1), "h2": harmonic(&h2), "residual": residual}))
        }
        Command::Reconstruct(args) => ("reconstruct", reconstruct(&harm4(&t)?, args, cli.tol)?),
        Command::Split(args) => ("split", split(&harm4(&t)?, args, cli.tol)?),
        Command::Classify => {
            let l = classify(&harm4(&t)?, cli.tol);
            ("classify", json!({"class": l.tag.name(), "residual": l.residual}))
        }
        Command::Verify => ("verify", verify(&t, cli.tol)?),
        Command::Generate(_) => unreachable!("generate reads no input"),
    };
    Ok(envelope(name, body))
}

fn decompose(t: &Tensor) -> Value {
    match t {
        Tensor::Elasticity(e) => {
            let q = decompose_elasticity(e);
            json!({
                "alpha": q.alpha,
                "beta": q.beta,
                "a_prime": mat3(&q.a_prime),
                "b_prime": mat3(&q.b_prime),
                "h": harmonic(&q.h),
            })
        }
        Tensor::Harmonic4(h) => json!({"h": harmonic(h)}),
        Tensor::Symmetric2(m) => {
            let parts = harmonic_decompose(&SymTensor::from_matrix(m));
            let p = parts.parts();
            json!({"deviator": harmonic(&p[0]), "spherical": p[1].as_sym().coeffs()[0]})
        }
    }
}

fn invariant_fields(h: &HarmTensor) -> Result<Value, CliError> {
    let inv = invariants(h)?;
    let mut m = Map::new();
    for k in 2..=10 {
        m.insert(format!("J{k}"), json!(inv.jk(k)));
    }
    for (key, v) in [
        ("K4", Some(inv.k4)),
        ("K6", Some(inv.k6)),
        ("K10", Some(inv.k10)),
        ("L10", Some(inv.l10)),
        ("M10", Some(inv.m10)),
        ("Delta3", Some(inv.delta3)),
        ("sigma1", inv.sigma1),
        ("sigma2", inv.sigma2),
        ("sigma3", inv.sigma3),
        ("sigma_eq", inv.sigma_eq),
        ("lode", inv.lode),
    ] {
        m.insert(key.into(), json!(v));
    }
    Ok(Value::Object(m))
}

fn resolve(choice: ClassChoice, h: &HarmTensor, tol: f64) -> Result<SymmetryClass, CliError> {
    Ok(match choice {
        ClassChoice::Auto => classify(h, tol).tag,
        ClassChoice::Transverse => SymmetryClass::Transverse,
        ClassChoice::Orthotropic => SymmetryClass::Orthotropic,
        ClassChoice::Tetragonal => SymmetryClass::Tetragonal,
        ClassChoice::Trigonal => SymmetryClass::Trigonal,
    })
}

fn reconstruct(h: &HarmTensor, args: &ClassArgs, tol: f64) -> Result<Value, CliError> {
    let class = resolve(args.class, h, tol)?;
    let rebuilt = match class {
        SymmetryClass::Transverse => reconstruct_transverse(h)?,
        SymmetryClass::Orthotropic => reconstruct_orthotropic(h)?,
        SymmetryClass::Tetragonal => tetragonal_split(h, args.branch)?.sum(),
        SymmetryClass::Trigonal => trigonal_split(h, args.branch)?.sum(),
        other => return Err(CliError::Class(other.name())),
    };
    let mut out = json!({
        "class": class.name(),
        "residual": rebuilt.rel_dist(h),
        "reconstruction": harmonic(&rebuilt),
    });
    if matches!(class, SymmetryClass::Tetragonal | SymmetryClass::Trigonal) {
        out["branch"] = json!(args.branch);
    }
    Ok(out)
}

fn split(h: &HarmTensor, args: &ClassArgs, tol: f64) -> Result<Value, CliError> {
    let class = resolve(args.class, h, tol)?;
    let (s, SigmaDelta { sigma, delta }) = match class {
        SymmetryClass::Tetragonal => (tetragonal_split(h, args.branch)?, tetragonal_params(h)?),
        SymmetryClass::Trigonal => (trigonal_split(h, args.branch)?, trigonal_params(h)?),
        other if args.class == ClassChoice::Auto => return Err(CliError::Class(other.name())),
        other => {
            return Err(CliError::Usage(format!(
                "split applies to tetragonal and trigonal tensors, not {}",
                other.name()
            )))
        }
    };
    Ok(json!({
        "class": class.name(),
        "branch": args.branch,
        "sigma": sigma,
        "delta": delta,
        "transverse_part": harmonic(&s.transverse_part),
        "cubic_part": harmonic(&s.cubic_part),
        "residual": s.sum().rel_dist(h),
    }))
}

fn verify(t: &Tensor, tol: f64) -> Result<Value, CliError> {
    let round_trip = match t {
        Tensor::Elasticity(e) => {
            let back = recompose_elasticity(&decompose_elasticity(e))?;
            rel((*back.kelvin() - *e.kelvin()).norm(), e.kelvin().norm())
        }
        Tensor::Harmonic4(h) => {
            let back = harmonic_decompose(h.as_sym()).recompose();
            rel((&back - h.as_sym()).norm(), h.norm())
        }
        Tensor::Symmetric2(m) => {
            let s = SymTensor::from_matrix(m);
            let back = harmonic_decompose(&s).recompose();
            rel((&back - &s).norm(), s.norm())
        }
    };
    let mut out = json!({"round_trip": round_trip});
    if matches!(t, Tensor::Symmetric2(_)) {
        return Ok(out);
    }
    let h = harm4(t)?;
    let label = classify(&h, tol);
    let (identity, residual) = match label.tag {
        SymmetryClass::Isotropic => ("vanishing harmonic part", Some(h.norm())),
        SymmetryClass::Cubic => ("octahedral invariance", Some(label.residual)),
        SymmetryClass::Transverse => ("transverse reconstruction", Some(reconstruct_transverse(&h)?.rel_dist(&h))),
        SymmetryClass::Orthotropic => ("orthotropic reconstruction", Some(reconstruct_orthotropic(&h)?.rel_dist(&h))),
        SymmetryClass::Tetragonal | SymmetryClass::Trigonal => {
            let mut worst: f64 = 0.0;
            for k in 1..=2 {
                let s = if label.tag == SymmetryClass::Tetragonal {
                    tetragonal_split(&h, k)?
                } else {
                    trigonal_split(&h, k)?
                };
                worst = worst.max(s.sum().rel_dist(&h));
            }
            ("split sum over both branches", Some(worst))
        }
        SymmetryClass::Lower => ("none", None),
    };
    out["class"] = json!(label.tag.name());
    out["identity"] = json!(identity);
    out["identity_residual"] = json!(residual);
    Ok(out)
}

fn params_for(args: &GenerateArgs, tag: ClassTag, rng: &mut ChaCha8Rng) -> Result<Params, CliError> {
    let stray = |what: &str| CliError::Usage(format!("--{what} does not apply to class {}", tag.name()));
    match tag {
        ClassTag::Transverse | ClassTag::Cubic => {
            if args.lambdas.is_some() {
                return Err(stray("lambdas"));
            }
            if args.sigma.is_some() {
                return Err(stray("sigma"));
            }
            Ok(args.delta.map_or_else(|| sample_params(tag, rng), Params::Delta))
        }
        ClassTag::Orthotropic => {
            if args.delta.is_some() {
                return Err(stray("delta"));
            }
            if args.sigma.is_some() {
                return Err(stray("sigma"));
            }
            match &args.lambdas {
                None => Ok(sample_params(tag, rng)),
                Some(l) if l.len() == 3 => Ok(Params::Lambdas([l[0], l[1], l[2]])),
                Some(l) => Err(CliError::Usage(format!("--lambdas needs 3 values, got {}", l.len()))),
            }
        }
        ClassTag::Tetragonal | ClassTag::Trigonal => {
            if args.lambdas.is_some() {
                return Err(stray("lambdas"));
            }
            match (args.sigma, args.delta) {
                (None, None) => Ok(sample_params(tag, rng)),
                (Some(sigma), Some(delta)) => Ok(Params::SigmaDelta { sigma, delta }),
                _ => Err(CliError::Usage(format!("class {} needs both --sigma and --delta", tag.name()))),
            }
        }
    }
}

pub fn generate(args: &GenerateArgs, seed: u64) -> Result<Value, CliError> {
    let tag = match args.class {
        GenClass::Transverse => ClassTag::Transverse,
        GenClass::Orthotropic => ClassTag::Orthotropic,
        GenClass::Tetragonal => ClassTag::Tetragonal,
        GenClass::Trigonal => ClassTag::Trigonal,
        GenClass::Cubic => ClassTag::Cubic,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = params_for(args, tag, &mut rng)?;
    let nf = normal_form(tag, params)?;
    let g = Rotation::random(&mut rng);
    let h = nf.rotated(&g);

    let mut meta = BTreeMap::new();
    meta.insert("class".to_string(), tag.name().to_string());
    meta.insert("seed".to_string(), seed.to_string());
    match params {
        Params::Delta(d) if tag == ClassTag::Cubic => {
            meta.insert("scale".into(), d.to_string());
        }
        Params::Delta(d) => {
            meta.insert("delta".into(), d.to_string());
        }
        Params::Lambdas(l) => {
            meta.insert("lambdas".into(), l.map(|x| x.to_string()).join(","));
        }
        Params::SigmaDelta { sigma, delta } => {
            meta.insert("sigma".into(), sigma.to_string());
            meta.insert("delta".into(), delta.to_string());
        }
    }
    let rows = g.matrix().0;
    meta.insert(
        "rotation".into(),
        rows.iter().flatten().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(","),
    );
    let doc = TensorDocument::kelvin(Kind::Harmonic4, &kelvin_from_harm4(&h)?, meta);
    Ok(serde_json::to_value(doc)?)
}
