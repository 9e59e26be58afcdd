use super::{Expr, ExprError, Func};

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax { offset, message: message.into() }
}

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(syntax(p.pos, format!("unexpected `{}`", p.peek_char())));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.src[self.pos..].chars().next().unwrap_or(' ')
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Expr::Pow(Box::new(base), self.exponent()?));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected a non-negative integer exponent"));
        }
        let n: u32 = self.src[start..self.pos]
            .parse()
            .map_err(|_| syntax(start, "exponent too large"))?;
        if self.eat(b'^') {
            let rest = self.exponent()?;
            return n.checked_pow(rest).ok_or_else(|| syntax(start, "exponent too large"));
        }
        Ok(n)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let Some(c) = self.peek() else {
            return Err(syntax(self.pos, "unexpected end of input"));
        };
        let start = self.pos;
        if c == b'(' {
            self.pos += 1;
            let e = self.sum()?;
            if !self.eat(b')') {
                return Err(syntax(self.pos, "expected `)`"));
            }
            return Ok(e);
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.bytes.len()
                && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = &self.src[start..self.pos];
            if self.eat(b'(') {
                let f = Func::from_name(name)
                    .ok_or_else(|| ExprError::UnknownFunction(name.to_string()))?;
                let arg = self.sum()?;
                if !self.eat(b')') {
                    return Err(syntax(self.pos, "expected `)`"));
                }
                return Ok(Expr::Call(f, Box::new(arg)));
            }
            return Ok(Expr::Var(name.to_string()));
        }
        Err(syntax(start, format!("unexpected `{}`", self.peek_char())))
    }

    fn number(&mut self, start: usize) -> Result<Expr, ExprError> {
        let digits = |p: &mut Self| {
            while p.pos < p.bytes.len() && p.bytes[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.bytes.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            let exp_start = self.pos;
            digits(self);
            if exp_start == self.pos {
                self.pos = mark;
            }
        }
        let text = &self.src[start..self.pos];
        match text.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Expr::Num(x)),
            _ => Err(syntax(start, format!("invalid number `{text}`"))),
        }
    }
}
