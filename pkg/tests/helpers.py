"""Shared helpers for the test suite."""
from pmdpdl import Axis3, JonesVector, NetworkSpec, Pdl, Pmd, Polarizer, PulseSpec


def random_state(rng) -> JonesVector:
    z = rng.normal(size=4)
    return JonesVector(complex(z[0], z[1]), complex(z[2], z[3])).normalized()


def random_axis(rng) -> Axis3:
    return Axis3(*rng.normal(size=3))


def random_weak_network(rng, max_dgd=0.01, max_mu=1.5, max_elements=5) -> NetworkSpec:
    """Random delay/filter chain with at least one delay element, in the
    regime where the closed-form engine is valid."""
    omega0 = float(rng.uniform(0, 1200)) if rng.random() < 0.5 else 0.0
    n_el = int(rng.integers(1, max_elements + 1))
    elements = []
    for _ in range(n_el):
        if rng.random() < 0.5:
            elements.append(Pmd(random_axis(rng), float(rng.uniform(0, max_dgd))))
        else:
            elements.append(Pdl(random_axis(rng), float(rng.uniform(0, max_mu))))
    if not any(isinstance(el, Pmd) for el in elements):
        elements[0] = Pmd(random_axis(rng), float(rng.uniform(0, max_dgd)))
    return NetworkSpec(PulseSpec(1.0, omega0), random_state(rng), tuple(elements))


def random_strong_network(rng, n_lo=2, n_hi=4) -> NetworkSpec:
    """Random chain with order-unity delays (arbitrary measurement strength),
    polarizers included; rerolled until clearly transmitting."""
    while True:
        elements = []
        for _ in range(int(rng.integers(n_lo, n_hi + 1))):
            r = rng.random()
            if r < 0.45:
                elements.append(Pmd(random_axis(rng), float(rng.uniform(0.1, 3.0))))
            elif r < 0.9:
                elements.append(Pdl(random_axis(rng), float(rng.uniform(0.0, 1.5))))
            else:
                elements.append(Polarizer(random_state(rng)))
        omega0 = float(rng.uniform(0, 3.0))
        spec = NetworkSpec(PulseSpec(1.0, omega0), random_state(rng), tuple(elements))
        from pmdpdl import run_exact

        try:
            if run_exact(spec).transmission > 1e-6:
                return spec
        except Exception:
            pass


def total_dgd(spec: NetworkSpec) -> float:
    return sum(el.dgd for el in spec.elements if isinstance(el, Pmd))
