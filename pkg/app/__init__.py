"""PT-Resonatoren – Effektiver Hamiltonian zweier magnetisch gekoppelter LRC-Schwingkreise."""

__version__ = "0.1.0"
