# encoding: utf-8
from setuptools import setup
from version import version, name, authors, email, short_desc


def readme():
    """Import README for use as long_description."""
    with open("README.rst") as f:
        return f.read()


setup(
    name=name,
    version=version,
    description=short_desc,
    long_description=readme(),
    author=authors,
    author_email=email,
    license="MIT",
    packages=["eplab"],
    zip_safe=False,
    python_requires=">=3.8",
    install_requires=[
        "numpy",
        "scipy",
        "pandas",
        "six",
        "csvkit",
    ],
    tests_require=["pytest"],
    include_package_data=True,
    package_data={"eplab": ["schema/*.csv", "schema/*.md"]},
    entry_points={
        "console_scripts": ["eplab = eplab.cli:main"],
    },
)
