"""Seeded random-vector generators with counter-based addressing.

All randomness comes from Philox keyed by (seed, stream_index). Uniform
doubles are the top 53 bits of each 64-bit word; normals come from the
Box-Muller transform on consecutive uniform pairs (both outputs used).

Sample i of a draw owns a fixed window of Philox counter blocks, so
generating indices [a, b) yields bit-identical values no matter how the
index range is partitioned across workers. That property is what makes the
parallel experiments reproduce serial results hit-for-hit.

Three generator kinds:

* ``gaussian``: x = mean + L z, with z i.i.d. standard normal and L the
  Cholesky factor of the covariance.
* ``paper_example``: x = (y, y+z) for independent zero-mean Gaussians with
  variances sigma^2 and k sigma^2; its covariance is
  [[s^2, s^2], [s^2, (k+1) s^2]].
* ``tight_radial``: x = mean + R L u with u uniform on the unit sphere and
  R^2 = eps with probability n/eps, else 0. Its covariance is exactly the
  given Sigma, and Pr{d^2 >= eps} equals n/eps: the Mahalanobis tail bound
  holds with equality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.random import Philox

from .errors import InvalidSpec
from .linalg import Covariance, as_vector
from .moments import example_covariance

_U64 = np.uint64
_DOUBLE_SCALE = 2.0 ** -53
_WORDS_PER_BLOCK = 4  # Philox-4x64 emits 4 words per counter increment

# The tight_radial atom sits on the closed tail event {d^2 >= eps}; round-off
# in the quadratic form would break the tie at random, so the shell radius is
# inflated by a margin far above round-off yet far below every statistical
# tolerance in use.
_SHELL_MARGIN = 1.0 + 1e-8

KINDS = ("gaussian", "paper_example", "tight_radial")


def _key(seed: int, stream_index: int) -> np.ndarray:
    if not 0 <= seed < 2 ** 64:
        raise InvalidSpec(f"seed must be a 64-bit unsigned integer, got {seed}")
    if not 0 <= stream_index < 2 ** 64:
        raise InvalidSpec(f"stream_index must be a 64-bit unsigned integer, got {stream_index}")
    return np.array([seed, stream_index], dtype=_U64)


def _to_uniform(words: np.ndarray) -> np.ndarray:
    # same conversion numpy uses for float64: top 53 bits, range [0, 1)
    return (words >> _U64(11)) * _DOUBLE_SCALE


class RandomStream:
    """Stateful view of the (seed, stream_index) uniform/normal sequence.

    ``position`` counts 64-bit words consumed; constructing a stream at a
    given position reproduces the suffix of the sequence exactly. A stream
    is single-owner: share work across threads by giving each worker its
    own stream (or its own position range), never a shared instance.
    """

    def __init__(self, seed: int, stream_index: int = 0, position: int = 0):
        self.seed = int(seed)
        self.stream_index = int(stream_index)
        self._bitgen = Philox(key=_key(self.seed, self.stream_index))
        if position:
            self._bitgen.advance(position // _WORDS_PER_BLOCK)
            rem = position % _WORDS_PER_BLOCK
            if rem:
                self._bitgen.random_raw(rem)
        self.position = int(position)
        self._spare_normal: float | None = None

    def uniforms(self, n: int) -> np.ndarray:
        """Next n uniform doubles in [0, 1)."""
        words = self._bitgen.random_raw(n)
        self.position += int(n)
        return _to_uniform(np.asarray(words, dtype=_U64).reshape(-1))

    def uniform(self) -> float:
        return float(self.uniforms(1)[0])

    def standard_normal(self) -> float:
        """Next standard normal draw (Box-Muller; the pair's second output
        is cached and returned by the following call)."""
        if self._spare_normal is not None:
            z = self._spare_normal
            self._spare_normal = None
            return z
        u = self.uniforms(2)
        r = np.sqrt(-2.0 * np.log1p(-u[0]))
        z0 = float(r * np.cos(2.0 * np.pi * u[1]))
        self._spare_normal = float(r * np.sin(2.0 * np.pi * u[1]))
        return z0

    def normals(self, n: int) -> np.ndarray:
        """Next n standard normals (vectorized Box-Muller on fresh pairs)."""
        z = _boxmuller(self.uniforms(2 * ((n + 1) // 2)))
        return z[:n]


def _boxmuller(uniforms: np.ndarray) -> np.ndarray:
    """Map 2m uniforms to 2m normals; pair (2i, 2i+1) feeds transform i."""
    u = uniforms.reshape(-1, 2)
    r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    angle = 2.0 * np.pi * u[:, 1]
    out = np.empty(u.shape[0] * 2)
    out[0::2] = r * np.cos(angle)
    out[1::2] = r * np.sin(angle)
    return out


@dataclass(frozen=True, eq=False)
class SamplerSpec:
    """Parameters of one generator kind plus the stream seed."""

    kind: str
    seed: int = 0
    mean: np.ndarray | None = None
    cov: Covariance | None = None
    sigma: float | None = None
    k: float | None = None
    eps: float | None = None


def gaussian_spec(mean, cov: Covariance, seed: int = 0) -> SamplerSpec:
    return _validated(
        SamplerSpec(kind="gaussian", seed=seed, mean=as_vector(mean, cov.dim), cov=cov)
    )


def paper_example_spec(sigma: float, k: float, seed: int = 0) -> SamplerSpec:
    return _validated(
        SamplerSpec(kind="paper_example", seed=seed, sigma=float(sigma), k=float(k))
    )


def tight_radial_spec(
    eps: float,
    dim: int | None = None,
    mean=None,
    cov: Covariance | None = None,
    seed: int = 0,
) -> SamplerSpec:
    """Equality-case distribution: dim alone means zero mean, identity Sigma."""
    if cov is None:
        if dim is None:
            raise InvalidSpec("tight_radial needs either dim or cov")
        cov = Covariance.from_matrix(np.eye(int(dim)))
    if mean is None:
        mean = np.zeros(cov.dim)
    return _validated(
        SamplerSpec(
            kind="tight_radial",
            seed=seed,
            mean=as_vector(mean, cov.dim),
            cov=cov,
            eps=float(eps),
        )
    )


def _validated(spec: SamplerSpec) -> SamplerSpec:
    if spec.kind not in KINDS:
        raise InvalidSpec(f"unknown sampler kind {spec.kind!r}")
    _key(spec.seed, 0)
    if spec.kind == "gaussian":
        if spec.mean is None or spec.cov is None:
            raise InvalidSpec("gaussian spec needs mean and cov")
        as_vector(spec.mean, spec.cov.dim)
    elif spec.kind == "paper_example":
        if spec.sigma is None or spec.k is None:
            raise InvalidSpec("paper_example spec needs sigma and k")
        if spec.sigma <= 0.0 or spec.k <= 0.0:
            raise InvalidSpec("paper_example needs sigma > 0 and k > 0")
    else:  # tight_radial
        if spec.mean is None or spec.cov is None or spec.eps is None:
            raise InvalidSpec("tight_radial spec needs mean, cov and eps")
        n = spec.cov.dim
        if spec.eps < n:
            raise InvalidSpec(
                f"tight_radial needs eps >= dim so n/eps <= 1; got eps={spec.eps}, dim={n}"
            )
    return spec


def spec_dim(spec: SamplerSpec) -> int:
    _validated(spec)
    return 2 if spec.kind == "paper_example" else spec.cov.dim


def true_moments(spec: SamplerSpec) -> tuple[np.ndarray, Covariance]:
    """Exact mean vector and covariance matrix of the spec's distribution."""
    _validated(spec)
    if spec.kind == "paper_example":
        return np.zeros(2), example_covariance(spec.sigma, spec.k)
    return spec.mean.copy(), spec.cov


def spec_to_dict(spec: SamplerSpec) -> dict:
    _validated(spec)
    out: dict = {"kind": spec.kind, "seed": int(spec.seed)}
    if spec.kind == "paper_example":
        out["sigma"] = float(spec.sigma)
        out["k"] = float(spec.k)
        return out
    out["mean"] = [float(v) for v in spec.mean]
    out["cov"] = [[float(v) for v in row] for row in spec.cov.entries]
    if spec.kind == "tight_radial":
        out["eps"] = float(spec.eps)
    return out


def spec_from_dict(data: dict) -> SamplerSpec:
    """Build a spec from its JSON form.

    ``tight_radial`` accepts either an explicit mean/cov or just ``dim``
    (zero mean, identity covariance). A missing seed defaults to 0.
    """
    if not isinstance(data, dict):
        raise InvalidSpec(f"spec must be a JSON object, got {type(data).__name__}")
    kind = data.get("kind")
    seed = int(data.get("seed", 0))
    try:
        if kind == "gaussian":
            cov = Covariance.from_matrix(data["cov"])
            return gaussian_spec(data["mean"], cov, seed=seed)
        if kind == "paper_example":
            return paper_example_spec(float(data["sigma"]), float(data["k"]), seed=seed)
        if kind == "tight_radial":
            cov = Covariance.from_matrix(data["cov"]) if "cov" in data else None
            dim = int(data["dim"]) if "dim" in data else None
            return tight_radial_spec(
                float(data["eps"]), dim=dim, mean=data.get("mean"), cov=cov, seed=seed
            )
    except KeyError as exc:
        raise InvalidSpec(f"spec is missing required field {exc}") from None
    raise InvalidSpec(f"unknown sampler kind {kind!r}")


def _words_per_sample(spec: SamplerSpec) -> int:
    n = spec_dim(spec)
    words = 2 * ((n + 1) // 2)  # Box-Muller pairs covering n normals
    if spec.kind == "tight_radial":
        words += 1  # Bernoulli word for the radial atom
    return words


def blocks_per_sample(spec: SamplerSpec) -> int:
    """Philox counter blocks reserved per sample (fixed layout)."""
    w = _words_per_sample(spec)
    return -(-w // _WORDS_PER_BLOCK)


def draw_range(
    spec: SamplerSpec, start: int, stop: int, stream_index: int = 0
) -> np.ndarray:
    """Samples with global indices [start, stop) of the spec's sequence.

    Sample i is a pure function of (seed, stream_index, i): it reads only
    the counter blocks [i*B, (i+1)*B) of the keyed Philox stream, where B =
    :func:`blocks_per_sample`. Concatenating ranges therefore reproduces
    :func:`draw` exactly, for any partition of the index range.
    """
    _validated(spec)
    if not 0 <= start <= stop:
        raise InvalidSpec(f"bad index range [{start}, {stop})")
    count = stop - start
    n = spec_dim(spec)
    if count == 0:
        return np.empty((0, n))
    blocks = blocks_per_sample(spec)
    bitgen = Philox(key=_key(spec.seed, stream_index))
    if start:
        bitgen.advance(start * blocks)
    words_total = count * blocks * _WORDS_PER_BLOCK
    raw = np.asarray(bitgen.random_raw(words_total), dtype=_U64)
    u = _to_uniform(raw).reshape(count, blocks * _WORDS_PER_BLOCK)

    n_normal_words = 2 * ((n + 1) // 2)
    z = _boxmuller(u[:, :n_normal_words].reshape(-1))
    z = z.reshape(count, n_normal_words)[:, :n]

    if spec.kind == "paper_example":
        y = spec.sigma * z[:, 0]
        w = np.sqrt(spec.k) * spec.sigma * z[:, 1]
        return np.column_stack([y, y + w])
    if spec.kind == "gaussian":
        return spec.mean + z @ spec.cov.chol.T
    # tight_radial
    norms = np.linalg.norm(z, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    direction = z / safe[:, None]
    direction[norms == 0.0] = np.eye(n)[0]
    bern = u[:, n_normal_words]
    radius = np.sqrt(spec.eps * _SHELL_MARGIN) * (bern < n / spec.eps)
    return spec.mean + radius[:, None] * (direction @ spec.cov.chol.T)


def draw(spec: SamplerSpec, n_samples: int, stream_index: int = 0) -> np.ndarray:
    """n_samples rows of the spec's distribution, deterministic in
    (seed, stream_index)."""
    if n_samples < 1:
        raise InvalidSpec(f"n_samples must be positive, got {n_samples}")
    return draw_range(spec, 0, n_samples, stream_index=stream_index)
