from .main import KontsevichApp, main
