import setuptools

with open('README.md', 'r') as file:
    long_description = file.read()

setuptools.setup(
    name='moreau',
    version='0.3.1',
    author='moreau contributors',
    description='Moreau envelopes, conjugates and epi-limits of generalized linear-quadratic functions',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(exclude=['docs', 'examples', 'tests']),
    python_requires='>=3.7',
    include_package_data=True,
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Programming Language :: Python :: 3',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Education'
    ],
    install_requires=['numpy', 'scipy'],
    extras_require={'test': ['pytest', 'hypothesis']},
    entry_points={'console_scripts': ['moreau = moreau.cli:main']}
)
