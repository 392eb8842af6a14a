//! Session state, expression evaluation and JSON persistence.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use mzeta::frobenius::random::random_object;
use mzeta::frobenius::{check_weil, FrobObj, Matrix, RandomParams};
use mzeta::poly::Poly;
use mzeta::rat::{fmt_rat, parse_rat, rat};
use mzeta::symbolic::packs::{abelian_pack, artin_pack, blowup_pack, curve_pack, psp};
use mzeta::symbolic::{Monomial, Registry, SymObject};
use mzeta::Rat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::ast::{Backend, Expr};
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Frob(FrobObj),
    Sym(SymObject),
}

pub struct Session {
    backend: Backend,
    q: Rat,
    seed: u64,
    /// Overrides the engine default order when a command gives none.
    pub order: Option<usize>,
    registry: Registry,
    bindings: BTreeMap<String, Object>,
    rng: ChaCha8Rng,
    /// Relative `save`/`load` paths resolve against this directory.
    pub base_dir: PathBuf,
}

impl Session {
    pub fn new(backend: Backend, seed: u64) -> Self {
        Session {
            backend,
            q: rat(2),
            seed,
            order: None,
            registry: Registry::new(),
            bindings: BTreeMap::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            base_dir: PathBuf::from("."),
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn bindings(&self) -> &BTreeMap<String, Object> {
        &self.bindings
    }

    /// Switching is allowed only while nothing is bound.
    pub fn set_backend(&mut self, b: Backend) -> CliResult<()> {
        if b != self.backend && !self.bindings.is_empty() {
            return Err(CliError::Backend(format!(
                "session already holds {} bindings; cannot switch to `{}`",
                self.backend.keyword(),
                b.keyword()
            )));
        }
        self.backend = b;
        Ok(())
    }

    pub fn set_q(&mut self, q: Rat) -> CliResult<()> {
        if q <= rat(0) {
            return Err(CliError::Core(mzeta::Error::BadWeilPoly(format!("q = {} must be positive", fmt_rat(&q)))));
        }
        self.q = q;
        Ok(())
    }

    pub fn get(&self, name: &str) -> CliResult<&Object> {
        self.bindings.get(name).ok_or_else(|| CliError::Name(name.into()))
    }

    pub fn bind(&mut self, name: &str, e: &Expr) -> CliResult<()> {
        let v = self.eval(e)?;
        self.bindings.insert(name.into(), v);
        Ok(())
    }

    pub fn eval(&mut self, e: &Expr) -> CliResult<Object> {
        match self.backend {
            Backend::Frobenius => self.eval_frob(e).map(Object::Frob),
            Backend::Symbolic => self.eval_sym(e).map(Object::Sym),
        }
    }

    fn eval_frob(&mut self, e: &Expr) -> CliResult<FrobObj> {
        let matrix = |rows: &[Vec<Rat>]| Matrix::from_rows(rows.to_vec());
        Ok(match e {
            Expr::Name(n) => match self.get(n)? {
                Object::Frob(m) => m.clone(),
                Object::Sym(_) => return Err(mixed(n)),
            },
            Expr::Unit => FrobObj::unit(),
            Expr::Lef(k) => FrobObj::tate(small(*k)?, &self.q)?,
            Expr::Curve { weil, q } => FrobObj::curve(&Poly::new(weil.clone()), q)?,
            Expr::Abelian(rows) => FrobObj::abelian(&matrix(rows)?)?,
            Expr::Artin(rows) => FrobObj::artin(matrix(rows)?)?,
            Expr::Psp(n, q) => FrobObj::projective_space(*n, q)?,
            Expr::Blowup(q) => FrobObj::blowup_p2_conjugate(q)?,
            Expr::Generic(v) => FrobObj::from_json(v)?,
            Expr::Random => random_object(&mut self.rng, &RandomParams::default(), None),
            Expr::Sum(a, b) => self.eval_frob(a)?.dsum(&self.eval_frob(b)?),
            Expr::Tensor(a, b) => self.eval_frob(a)?.tensor(&self.eval_frob(b)?),
            Expr::Dual(x) => self.eval_frob(x)?.dual(),
            Expr::Sym(x, n) => self.eval_frob(x)?.sym_power_object(*n),
            Expr::Ext(x, n) => self.eval_frob(x)?.ext_power_object(*n),
            Expr::Det(x) => self.eval_frob(x)?.det_as_object(),
        })
    }

    fn eval_sym(&mut self, e: &Expr) -> CliResult<SymObject> {
        let reg = &mut self.registry;
        Ok(match e {
            Expr::Name(n) => match self.bindings.get(n).ok_or_else(|| CliError::Name(n.clone()))? {
                Object::Sym(m) => m.clone(),
                Object::Frob(_) => return Err(mixed(n)),
            },
            Expr::Unit => SymObject::unit(),
            Expr::Lef(k) => SymObject::line(Monomial::atom(&reg.lefschetz()).pow(*k).expect("L is invertible")),
            Expr::Curve { weil, q } => {
                let weil = Poly::new(weil.clone());
                check_weil(&weil, q)?;
                curve_pack(reg, weil.degree().unwrap_or(0) / 2)?
            }
            Expr::Abelian(rows) => {
                let m = Matrix::from_rows(rows.clone())?;
                // same validation as the matrix backend
                FrobObj::abelian(&m)?;
                abelian_pack(reg, m.rows() / 2)?
            }
            Expr::Artin(rows) => artin_pack(reg, &Matrix::from_rows(rows.clone())?)?,
            Expr::Psp(n, _) => psp(reg, *n as usize),
            Expr::Blowup(_) => blowup_pack(reg)?,
            Expr::Generic(_) | Expr::Random => {
                return Err(CliError::Backend(format!("`{e}` needs the frobenius backend")));
            }
            Expr::Sum(a, b) => {
                let a = self.eval_sym(a)?;
                a.dsum(&self.eval_sym(b)?)
            }
            Expr::Tensor(a, b) => {
                let a = self.eval_sym(a)?;
                a.tensor(&self.eval_sym(b)?)
            }
            Expr::Dual(x) => {
                let x = self.eval_sym(x)?;
                x.dual(&self.registry)?
            }
            Expr::Sym(x, n) => self.eval_sym(x)?.sym_power(*n),
            Expr::Ext(x, n) => self.eval_sym(x)?.ext_power(*n),
            Expr::Det(x) => self.eval_sym(x)?.det(),
        })
    }

    pub fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// `{"backend", "bindings", "options"}` with sorted keys.
    pub fn to_json(&self) -> CliResult<Value> {
        let mut bindings = serde_json::Map::new();
        for (name, obj) in &self.bindings {
            let v = match obj {
                Object::Frob(m) => m.to_json(),
                Object::Sym(m) => m.to_json(&self.registry)?,
            };
            bindings.insert(name.clone(), v);
        }
        Ok(json!({
            "backend": self.backend.keyword(),
            "bindings": bindings,
            "options": { "q": fmt_rat(&self.q), "seed": self.seed.to_string() },
        }))
    }

    /// Replaces backend, options and bindings from a saved session.
    pub fn load_json(&mut self, v: &Value) -> CliResult<()> {
        let bad = |m: &str| CliError::Core(mzeta::Error::Malformed(m.into()));
        let backend = v["backend"].as_str().and_then(Backend::from_keyword).ok_or_else(|| bad("session backend"))?;
        let q = match v["options"]["q"].as_str() {
            Some(s) => parse_rat(s)?,
            None => rat(2),
        };
        let seed = match v["options"]["seed"].as_str() {
            Some(s) => s.parse().map_err(|_| bad("session seed"))?,
            None => self.seed,
        };
        let mut registry = Registry::new();
        let mut bindings = BTreeMap::new();
        for (name, obj) in v["bindings"].as_object().ok_or_else(|| bad("session bindings"))? {
            let o = match backend {
                Backend::Frobenius => Object::Frob(FrobObj::from_json(obj)?),
                Backend::Symbolic => Object::Sym(SymObject::from_json(&mut registry, obj)?),
            };
            bindings.insert(name.clone(), o);
        }
        *self = Session {
            backend,
            q,
            seed,
            order: self.order,
            registry,
            bindings,
            rng: ChaCha8Rng::seed_from_u64(seed),
            base_dir: self.base_dir.clone(),
        };
        Ok(())
    }
}

fn mixed(name: &str) -> CliError {
    CliError::Backend(format!("`{name}` belongs to the other backend"))
}

fn small(k: i64) -> CliResult<i32> {
    i32::try_from(k).map_err(|_| CliError::Core(mzeta::Error::Unsupported(format!("exponent {k} is too large"))))
}
