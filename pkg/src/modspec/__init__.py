"""Second and coprime spectra of finite modules over Z/nZ."""

__version__ = "0.1.0"
