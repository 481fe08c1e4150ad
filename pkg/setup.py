"""
A setuptools based setup module for phrasebreak.
"""
from codecs import open
from os import path

from setuptools import setup, find_packages


here = path.abspath(path.dirname(__file__))


# The short description is the README's first paragraph, the long one
# runs up to the first horizontal rule.
with open(path.join(here, "README.md"), encoding="utf-8") as f:
    contents = f.read()
    short_description = contents.splitlines()[2]
    long_description = "\n".join(contents.splitlines()[2:]).split("----------")[0]


setup(
    name="phrasebreak",
    version="0.1.0",
    description=short_description,
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Education",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        "Topic :: Multimedia :: Sound/Audio :: Speech",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    keywords="speech prosody phrase-break assessment language-learning transformer",
    packages=find_packages(exclude=("dist", "_docs")),
    python_requires=">=3.8",
    # Run-time dependencies. Development tools live in requirements.txt.
    install_requires=[
        "numpy>=1.21",
        "PyYAML>=5.4",
        "PyExcelerate~=0.10",
        "scikit-learn>=1.0",
        "tqdm>=4.60",
    ],
    extras_require={
        "dev": ["openpyxl~=3.0", "pylint", "black", "twine"],
        "docs": ["Sphinx~=4.4", "sphinx-rtd-theme~=1.0"],
    },
    entry_points={
        "console_scripts": [
            "phrasebreak = phrasebreak.management:main",
        ],
    },
)
