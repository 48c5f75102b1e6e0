# Tests import betahole from src/ via pytest pythonpath
