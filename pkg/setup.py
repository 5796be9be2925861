from setuptools import setup, find_packages

# README.md is the long description
with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

# Runtime dependencies live in requirements.txt
with open("requirements.txt", "r", encoding="utf-8") as f:
    requirements = [line for line in f.read().splitlines() if line and not line.startswith("#")]

setup(
    name="okounkov-bodies",
    version="0.1.0",
    description="Exact Newton-Okounkov body computations for projective spaces and toric varieties.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=("tests", "tests.*")),
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "okounkov-bodies=okounkov_bodies.cli:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.8',
)
