use super::lexer::{lex, Diagnostic, Severity, Span, Tok, Token};

/// An identifier with its source span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

/// `(key, value)` entry such as `a |-> b` or `at a: M`.
pub type Pair = (Name, Name);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Endo,
    Monad,
    Comonad,
}

impl ParamKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ParamKind::Endo => "paramendo",
            ParamKind::Monad => "parammonad",
            ParamKind::Comonad => "paramcomonad",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclKind {
    Category {
        objects: Vec<Name>,
        /// `(id, src, dst)`
        morphisms: Vec<(Name, Name, Name)>,
        /// `(h, g, f)` for `h = g . f`
        compose: Vec<(Name, Name, Name)>,
    },
    Functor {
        dom: Name,
        cod: Name,
        objects: Vec<Pair>,
        morphisms: Vec<Pair>,
    },
    Nat {
        /// Composite paths, outermost first.
        source: Vec<Name>,
        target: Vec<Name>,
        at: Vec<Pair>,
    },
    Monad {
        co: bool,
        on: Name,
        functor: Name,
        unit: Name,
        mult: Name,
    },
    Param {
        kind: ParamKind,
        params: Name,
        carriers: Name,
        at: Vec<Pair>,
        along: Vec<Pair>,
    },
    Fibration {
        base: Name,
        at: Vec<Pair>,
        along: Vec<Pair>,
    },
    Total {
        of: Name,
        flavor: Name,
    },
    Monoid {
        group: bool,
        elements: Vec<Name>,
        rows: Vec<(Name, Vec<Name>)>,
    },
    Action {
        acting: Name,
        on: Name,
        acts: Vec<(Name, Vec<Name>)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub keyword: Name,
    pub name: Name,
    pub kind: DeclKind,
}

impl Decl {
    /// Entity names this declaration refers to.
    pub fn references(&self) -> Vec<&Name> {
        match &self.kind {
            DeclKind::Category { .. } | DeclKind::Monoid { .. } => vec![],
            DeclKind::Functor { dom, cod, .. } => vec![dom, cod],
            DeclKind::Nat { source, target, .. } => source.iter().chain(target).collect(),
            DeclKind::Monad {
                on,
                functor,
                unit,
                mult,
                ..
            } => vec![on, functor, unit, mult],
            DeclKind::Param {
                params,
                carriers,
                at,
                along,
                ..
            } => [params, carriers]
                .into_iter()
                .chain(at.iter().map(|p| &p.1))
                .chain(along.iter().map(|p| &p.1))
                .collect(),
            DeclKind::Fibration { base, at, along } => std::iter::once(base)
                .chain(at.iter().map(|p| &p.1))
                .chain(along.iter().map(|p| &p.1))
                .collect(),
            DeclKind::Total { of, .. } => vec![of],
            DeclKind::Action { acting, on, .. } => vec![acting, on],
        }
    }
}

pub const KEYWORDS: &[&str] = &[
    "category",
    "functor",
    "nat",
    "monad",
    "comonad",
    "paramendo",
    "parammonad",
    "paramcomonad",
    "fibration",
    "total",
    "monoid",
    "group",
    "action",
];

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, Diagnostic>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Token {
        self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> Token {
        self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    fn text(&self, t: Token) -> &'a str {
        t.span.slice(self.src)
    }

    fn bump(&mut self) -> Token {
        let t = self.peek();
        if t.kind != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, t: Token, expected: &str) -> Diagnostic {
        let found = if t.kind == Tok::Eof {
            "end of input".to_string()
        } else {
            format!("`{}`", self.text(t))
        };
        Diagnostic::new(Severity::Syntax, format!("expected {expected}, found {found}"), t.span)
    }

    fn expect(&mut self, kind: Tok) -> PResult<Token> {
        let t = self.peek();
        if t.kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(t, kind.describe()))
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        let t = self.expect(Tok::Ident)?;
        Ok(Name {
            text: self.text(t).to_string(),
            span: t.span,
        })
    }

    fn is_word(&self, t: Token, word: &str) -> bool {
        t.kind == Tok::Ident && self.text(t) == word
    }

    fn word(&mut self, word: &str) -> PResult<Token> {
        let t = self.peek();
        if self.is_word(t, word) {
            Ok(self.bump())
        } else {
            Err(self.error(t, &format!("`{word}`")))
        }
    }

    /// `word :` as a section header.
    fn section(&mut self, word: &str) -> PResult<()> {
        self.word(word)?;
        self.expect(Tok::Colon)?;
        Ok(())
    }

    fn at_section(&self, word: &str) -> bool {
        self.is_word(self.peek(), word) && self.peek_at(1).kind == Tok::Colon
    }

    /// `id (, id)* ;` possibly empty (just `;`).
    fn id_list(&mut self) -> PResult<Vec<Name>> {
        let mut out = Vec::new();
        if self.peek().kind == Tok::Semi {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            match self.peek().kind {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Semi => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(self.error(self.peek(), "`,` or `;`")),
            }
        }
    }

    /// `name (. name)*`
    fn path(&mut self) -> PResult<Vec<Name>> {
        let mut out = vec![self.ident()?];
        while self.peek().kind == Tok::Dot {
            self.bump();
            out.push(self.ident()?);
        }
        Ok(out)
    }

    /// Entries `word key : value ;` repeated.
    fn keyed_entries(&mut self, word: &str, out: &mut Vec<Pair>) -> PResult<bool> {
        if !self.is_word(self.peek(), word) || self.peek_at(1).kind != Tok::Ident {
            return Ok(false);
        }
        self.bump();
        let k = self.ident()?;
        self.expect(Tok::Colon)?;
        let v = self.ident()?;
        self.expect(Tok::Semi)?;
        out.push((k, v));
        Ok(true)
    }

    fn decl(&mut self) -> PResult<Decl> {
        let kw_tok = self.peek();
        let kw = self.text(kw_tok);
        if kw_tok.kind != Tok::Ident || !KEYWORDS.contains(&kw) {
            return Err(self.error(kw_tok, "a declaration keyword"));
        }
        self.bump();
        let keyword = Name {
            text: kw.to_string(),
            span: kw_tok.span,
        };
        let name = self.ident()?;
        let kind = match kw {
            "category" => self.category()?,
            "functor" => self.functor()?,
            "nat" => self.nat()?,
            "monad" | "comonad" => self.monad(kw == "comonad")?,
            "paramendo" => self.param(ParamKind::Endo)?,
            "parammonad" => self.param(ParamKind::Monad)?,
            "paramcomonad" => self.param(ParamKind::Comonad)?,
            "fibration" => self.fibration()?,
            "total" => {
                self.word("of")?;
                let of = self.ident()?;
                self.word("as")?;
                let flavor = self.ident()?;
                self.expect(Tok::Semi)?;
                DeclKind::Total { of, flavor }
            }
            "monoid" | "group" => self.monoid(kw == "group")?,
            "action" => self.action()?,
            _ => unreachable!("keyword list"),
        };
        Ok(Decl { keyword, name, kind })
    }

    fn category(&mut self) -> PResult<DeclKind> {
        self.expect(Tok::LBrace)?;
        let (mut objects, mut morphisms, mut compose) = (Vec::new(), Vec::new(), Vec::new());
        if self.at_section("objects") {
            self.section("objects")?;
            objects = self.id_list()?;
        }
        if self.at_section("morphisms") {
            self.section("morphisms")?;
            // `id : id -> id ;`
            while self.peek().kind == Tok::Ident
                && self.peek_at(1).kind == Tok::Colon
                && self.peek_at(3).kind == Tok::Arrow
            {
                let id = self.ident()?;
                self.expect(Tok::Colon)?;
                let s = self.ident()?;
                self.expect(Tok::Arrow)?;
                let d = self.ident()?;
                self.expect(Tok::Semi)?;
                morphisms.push((id, s, d));
            }
        }
        if self.at_section("compose") {
            self.section("compose")?;
            while self.peek().kind == Tok::Ident {
                let h = self.ident()?;
                self.expect(Tok::Eq)?;
                let g = self.ident()?;
                self.expect(Tok::Dot)?;
                let f = self.ident()?;
                self.expect(Tok::Semi)?;
                compose.push((h, g, f));
            }
        }
        self.close("`objects:`, `morphisms:`, `compose:` or `}`")?;
        Ok(DeclKind::Category {
            objects,
            morphisms,
            compose,
        })
    }

    fn close(&mut self, expected: &str) -> PResult<()> {
        if self.peek().kind == Tok::RBrace {
            self.bump();
            Ok(())
        } else {
            Err(self.error(self.peek(), expected))
        }
    }

    fn maps_to(&mut self, out: &mut Vec<Pair>) -> PResult<()> {
        while self.peek().kind == Tok::Ident && self.peek_at(1).kind == Tok::MapsTo {
            let a = self.ident()?;
            self.expect(Tok::MapsTo)?;
            let b = self.ident()?;
            self.expect(Tok::Semi)?;
            out.push((a, b));
        }
        Ok(())
    }

    fn functor(&mut self) -> PResult<DeclKind> {
        self.expect(Tok::Colon)?;
        let dom = self.ident()?;
        self.expect(Tok::Arrow)?;
        let cod = self.ident()?;
        self.expect(Tok::LBrace)?;
        let (mut objects, mut morphisms) = (Vec::new(), Vec::new());
        if self.at_section("objects") {
            self.section("objects")?;
            self.maps_to(&mut objects)?;
        }
        if self.at_section("morphisms") {
            self.section("morphisms")?;
            self.maps_to(&mut morphisms)?;
        }
        self.close("`objects:`, `morphisms:`, an entry `x |-> y;` or `}`")?;
        Ok(DeclKind::Functor {
            dom,
            cod,
            objects,
            morphisms,
        })
    }

    fn nat(&mut self) -> PResult<DeclKind> {
        self.expect(Tok::Colon)?;
        let source = self.path()?;
        self.expect(Tok::DArrow)?;
        let target = self.path()?;
        self.expect(Tok::LBrace)?;
        let mut at = Vec::new();
        while self.keyed_entries("at", &mut at)? {}
        self.close("`at OBJECT: MORPHISM;` or `}`")?;
        Ok(DeclKind::Nat { source, target, at })
    }

    fn monad(&mut self, co: bool) -> PResult<DeclKind> {
        self.word("on")?;
        let on = self.ident()?;
        self.expect(Tok::LBrace)?;
        let (unit_kw, mult_kw) = if co { ("counit", "comult") } else { ("unit", "mult") };
        let field = |p: &mut Self, kw: &str| -> PResult<Name> {
            p.section(kw)?;
            let n = p.ident()?;
            p.expect(Tok::Semi)?;
            Ok(n)
        };
        let functor = field(self, "functor")?;
        let unit = field(self, unit_kw)?;
        let mult = field(self, mult_kw)?;
        self.close("`}`")?;
        Ok(DeclKind::Monad {
            co,
            on,
            functor,
            unit,
            mult,
        })
    }

    fn param(&mut self, kind: ParamKind) -> PResult<DeclKind> {
        self.expect(Tok::Colon)?;
        let params = self.ident()?;
        self.expect(Tok::Star)?;
        let carriers = self.ident()?;
        self.expect(Tok::LBrace)?;
        let (mut at, mut along) = (Vec::new(), Vec::new());
        while self.keyed_entries("at", &mut at)? {}
        while self.keyed_entries("along", &mut along)? {}
        self.close("`at OBJECT: NAME;`, `along MORPHISM: NAME;` or `}`")?;
        Ok(DeclKind::Param {
            kind,
            params,
            carriers,
            at,
            along,
        })
    }

    fn fibration(&mut self) -> PResult<DeclKind> {
        self.word("over")?;
        let base = self.ident()?;
        self.expect(Tok::LBrace)?;
        let (mut at, mut along) = (Vec::new(), Vec::new());
        while self.keyed_entries("at", &mut at)? {}
        while self.keyed_entries("along", &mut along)? {}
        self.close("`at OBJECT: CATEGORY;`, `along MORPHISM: FUNCTOR;` or `}`")?;
        Ok(DeclKind::Fibration { base, at, along })
    }

    /// Entries `word key : id (, id)* ;` repeated.
    fn rows(&mut self, word: &str) -> PResult<Vec<(Name, Vec<Name>)>> {
        let mut out = Vec::new();
        while self.is_word(self.peek(), word) && self.peek_at(1).kind == Tok::Ident {
            self.bump();
            let k = self.ident()?;
            self.expect(Tok::Colon)?;
            out.push((k, self.id_list()?));
        }
        Ok(out)
    }

    fn monoid(&mut self, group: bool) -> PResult<DeclKind> {
        self.expect(Tok::LBrace)?;
        self.section("elements")?;
        let elements = self.id_list()?;
        let rows = self.rows("row")?;
        self.close("`row ELEMENT: PRODUCTS;` or `}`")?;
        Ok(DeclKind::Monoid { group, elements, rows })
    }

    fn action(&mut self) -> PResult<DeclKind> {
        self.expect(Tok::Colon)?;
        let acting = self.ident()?;
        self.word("on")?;
        let on = self.ident()?;
        self.expect(Tok::LBrace)?;
        let acts = self.rows("act")?;
        self.close("`act ELEMENT: IMAGES;` or `}`")?;
        Ok(DeclKind::Action { acting, on, acts })
    }

    /// Skips to just after the `}` closing the current declaration, or to the
    /// next top-level keyword.
    fn recover(&mut self, start: usize) {
        let mut depth = 0i32;
        let mut i = start;
        while i < self.toks.len() {
            let t = self.toks[i];
            match t.kind {
                Tok::Eof => break,
                Tok::LBrace => depth += 1,
                Tok::RBrace => {
                    depth -= 1;
                    if depth <= 0 {
                        self.pos = i + 1;
                        return;
                    }
                }
                Tok::Ident if i > start && depth <= 0 && KEYWORDS.contains(&self.text(t)) => {
                    self.pos = i;
                    return;
                }
                Tok::Semi if depth == 0 && i > start => {
                    self.pos = i + 1;
                    return;
                }
                _ => {}
            }
            i += 1;
        }
        self.pos = self.toks.len() - 1;
    }
}

/// Parses declarations; lexical and syntax diagnostics are collected with
/// recovery at declaration boundaries.
pub fn parse_decls(src: &str) -> (Vec<Decl>, Vec<Diagnostic>) {
    let (toks, mut diags) = lex(src);
    let mut p = Parser { src, toks, pos: 0 };
    let mut decls = Vec::new();
    while p.peek().kind != Tok::Eof {
        let start = p.pos;
        match p.decl() {
            Ok(d) => decls.push(d),
            Err(d) => {
                diags.push(d);
                p.recover(start);
            }
        }
    }
    (decls, diags)
}
