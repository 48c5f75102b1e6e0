"""
betahole Setup Script.

Metadata lives in pyproject.toml; this shim keeps ``pip install -e .`` working
on older toolchains.
"""

from setuptools import find_packages, setup

setup(
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    python_requires=">=3.10",
    zip_safe=True,
)
