// SPDX-License-Identifier: Apache-2.0

use axum::http::header::AUTHORIZATION;
use axum::http::HeaderMap;
use subtle::ConstantTimeEq;

/// The single bearer token accepted on write endpoints.
#[derive(Clone)]
pub struct BearerToken(String);

impl BearerToken {
    pub fn new(token: impl Into<String>) -> Option<Self> {
        let token = token.into();
        (!token.is_empty()).then_some(Self(token))
    }

    /// True when the request carries `Authorization: Bearer <token>`. The
    /// comparison time does not depend on where the presented token differs.
    pub fn allows(&self, headers: &HeaderMap) -> bool {
        let Some(presented) = headers
            .get(AUTHORIZATION)
            .and_then(|v| v.to_str().ok())
            .and_then(|v| v.strip_prefix("Bearer "))
        else {
            return false;
        };
        presented.as_bytes().ct_eq(self.0.as_bytes()).into()
    }
}

impl std::fmt::Debug for BearerToken {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("BearerToken(..)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn headers(value: &str) -> HeaderMap {
        let mut h = HeaderMap::new();
        h.insert(AUTHORIZATION, value.parse().unwrap());
        h
    }

    #[test]
    fn checks() {
        let t = BearerToken::new("s3cret").unwrap();
        assert!(t.allows(&headers("Bearer s3cret")));
        assert!(!t.allows(&headers("Bearer s3creT")));
        assert!(!t.allows(&headers("Bearer s3cret2")));
        assert!(!t.allows(&headers("Basic s3cret")));
        assert!(!t.allows(&HeaderMap::new()));
        assert!(BearerToken::new("").is_none());
    }
}
