from setuptools import setup, find_packages

with open("README.rst", "r") as fh:
    long_description = fh.read()

with open("requirements.txt") as f:
    requirements = [x.split("#")[0].strip() for x in f.read().splitlines() if x.split("#")[0].strip()]

with open("anoncover/__init__.py") as f:
    version = next(x.split("=")[1].strip().strip("\"'") for x in f if x.startswith("__version__"))

setup(
    name="anoncover",
    version=version,
    author="anoncover developers",
    description="Symmetric coverings, lifts and spanning-tree and topology computability on anonymous networks.",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: System :: Distributed Computing",
    ],
    python_requires=">=3.8",
    packages=find_packages(include=["anoncover", "anoncover.*"]),
    package_data={"anoncover.graphs": ["corpus/*.yaml"]},
    entry_points={
        "console_scripts": [
            "anoncover=anoncover.cli:main",
        ],
    },
    install_requires=requirements,
    extras_require={
        "docs": [
            "sphinx",
            "sphinx-rtd-theme",
            "sphinx-click",
        ],
    },
)
